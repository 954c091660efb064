//! Integer polynomials, constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial over arbitrary-precision integers. Coefficients are
/// stored constant-first with no trailing zeros, so the zero polynomial
/// has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^power` (zero beyond the degree).
    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_else(BigInt::zero)
    }

    /// All coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(One::is_one).unwrap_or(false)
    }

    pub fn add(&self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, factor: &BigInt) -> IntPolynomial {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// The reversal `x^degree · p(1/x)` padded to the given degree; turns
    /// a monic characteristic polynomial into a denominator with constant
    /// term 1.
    pub fn reversed(&self, degree: usize) -> IntPolynomial {
        let mut out = vec![BigInt::zero(); degree + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= degree, "reversal degree too small");
            out[degree - i] = c.clone();
        }
        Self::new(out)
    }

    /// Exact division, panicking on a nonzero remainder.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> IntPolynomial {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if self.is_zero() {
            return Self::zero();
        }
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading().unwrap();
        if rem.len() < divisor.coeffs.len() {
            panic!("inexact polynomial division");
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let sub = c * &q;
                rem[k + i] -= sub;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Self::new(quot)
    }

    /// Greatest common divisor of all coefficients (zero for the zero
    /// polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive-part GCD via the subtractive pseudo-remainder sequence;
    /// the result is primitive with a positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    fn primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut content = self.content();
        if self.leading().unwrap().is_negative() {
            content = -content;
        }
        Self::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    fn pseudo_rem(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        while !rem.is_zero() && rem.coeffs.len() > dd {
            let shift = rem.coeffs.len() - 1 - dd;
            let factor = rem.leading().unwrap().clone();
            let mut shifted = vec![BigInt::zero(); shift];
            shifted.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem
                .scale(&lead)
                .add(&IntPolynomial::new(shifted).scale(&-BigInt::one()));
        }
        rem
    }
}

impl fmt::Display for IntPolynomial {
    /// Human form, ascending powers: `1 - 10x + 27x^2 - 20x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_mag = !mag.is_one() || power == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}
