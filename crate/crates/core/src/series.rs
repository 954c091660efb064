//! Characteristic polynomials, universal linear recurrences, and rational
//! generating functions for periodic and primitive sequence counts.
//!
//! The characteristic polynomial of the transfer matrix yields, by the
//! Cayley–Hamilton theorem, a linear recurrence satisfied by every walk-count
//! sequence for fixed `(b, m)`, once past the initial noise of the start
//! state. The generating function of the closed-walk counts at a state is
//! then rational with the reversed characteristic polynomial as its
//! denominator, and the first-return (primitive) counts follow from the
//! transform `F ↦ F / (1 + F)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::oracle::{count_first_return, count_walks_brute};
use crate::poly::IntPolynomial;
use crate::state::State;
use crate::transfer::TransferMatrix;

/// `det(xI − A)` for a transfer matrix, computed by the Faddeev–LeVerrier
/// scheme: all divisions are exact integer divisions, no rationals and no
/// floating point. The result is monic of degree `r`.
pub fn char_poly(matrix: &TransferMatrix) -> IntPolynomial {
    let r = matrix.order();
    let entries: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| BigInt::from(matrix.entry(i, j).clone()))
                .collect()
        })
        .collect();
    // p(x) = x^r + q_1 x^{r-1} + ... + q_r, via M_k = A(M_{k-1} + q_{k-1} I),
    // q_k = -tr(M_k)/k.
    let mut q = vec![BigInt::zero(); r + 1];
    q[0] = BigInt::one();
    let mut work: Vec<Vec<BigInt>> = entries.clone();
    for k in 1..=r {
        if k > 1 {
            let mut next = vec![vec![BigInt::zero(); r]; r];
            for i in 0..r {
                for j in 0..r {
                    let mut acc = BigInt::zero();
                    for l in 0..r {
                        let mut t = work[l][j].clone();
                        if l == j {
                            t += &q[k - 1];
                        }
                        acc += &entries[i][l] * t;
                    }
                    next[i][j] = acc;
                }
            }
            work = next;
        }
        let trace: BigInt = (0..r).map(|i| work[i][i].clone()).sum();
        let (quot, rem) = num_integer::Integer::div_rem(&(-trace), &BigInt::from(k as u64));
        assert!(rem.is_zero(), "Faddeev-LeVerrier division must be exact");
        q[k] = quot;
    }
    // Constant-first: coefficient of x^i is q[r - i].
    IntPolynomial::new((0..=r).map(|i| q[r - i].clone()).collect())
}

/// The linear recurrence induced by a monic characteristic polynomial
/// `x^r + q_1 x^{r−1} + ⋯ + q_r`:
/// `a(n+r) = −q_1·a(n+r−1) − ⋯ − q_r·a(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    /// `q_1 … q_r`.
    coeffs: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn from_char_poly(p: &IntPolynomial) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::NonMonicPolynomial);
        }
        let r = p.degree().expect("monic implies nonzero");
        if r == 0 {
            return Err(Error::InvalidArgument(
                "recurrence needs a polynomial of degree at least 1".into(),
            ));
        }
        let coeffs = (1..=r).map(|i| p.coeff(r - i)).collect();
        Ok(LinearRecurrence { coeffs })
    }

    /// Order `r`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The `q_i` coefficients, `q_1` first.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The next term from the last `order()` terms (most recent last).
    pub fn next_term(&self, history: &[BigInt]) -> BigInt {
        assert!(history.len() >= self.order(), "not enough history");
        let mut acc = BigInt::zero();
        for (i, q) in self.coeffs.iter().enumerate() {
            acc -= q * &history[history.len() - 1 - i];
        }
        acc
    }
}

impl fmt::Display for LinearRecurrence {
    /// Renders e.g. `a(n+3) = 10 a(n+2) - 27 a(n+1) + 20 a(n)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.order();
        write!(f, "a(n+{r}) =")?;
        let mut wrote = false;
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let value = -q.clone();
            if wrote {
                write!(f, " {} ", if value.is_negative() { "-" } else { "+" })?;
            } else {
                write!(f, "{}", if value.is_negative() { " -" } else { " " })?;
                wrote = true;
            }
            let mag = value.abs();
            let lag = r - 1 - i;
            if lag == 0 {
                write!(f, "{mag} a(n)")?;
            } else {
                write!(f, "{mag} a(n+{lag})")?;
            }
        }
        if !wrote {
            write!(f, " 0")?;
        }
        Ok(())
    }
}

/// A rational generating function `N(x)/D(x)` with `D(0) = 1`, so the
/// power-series expansion has integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalGF {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        if !denominator.coeff(0).is_one() {
            return Err(Error::InvalidArgument(
                "denominator must have constant term 1".into(),
            ));
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    /// First `terms` power-series coefficients starting at `x^1`.
    pub fn expand(&self, terms: usize) -> Vec<BigInt> {
        let mut coeffs = Vec::with_capacity(terms + 1);
        for k in 0..=terms {
            let mut c = self.numerator.coeff(k);
            for i in 1..=k.min(self.denominator.coeffs().len().saturating_sub(1)) {
                c -= self.denominator.coeff(i) * &coeffs[k - i];
            }
            coeffs.push(c);
        }
        coeffs.remove(0);
        coeffs
    }

    /// The first-return transform `F ↦ F/(1+F) = N/(D+N)`; requires a
    /// vanishing constant term so that the result is again a power series
    /// with `D(0) = 1`.
    pub fn primitive_transform(&self) -> Result<RationalGF> {
        if !self.numerator.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        RationalGF::new(
            self.numerator.clone(),
            self.denominator.add(&self.numerator),
        )
    }

    /// The gcd-cancelled form; cosmetic, the unreduced form matches the
    /// reference tables.
    pub fn reduced(&self) -> RationalGF {
        if self.numerator.is_zero() {
            return RationalGF {
                numerator: IntPolynomial::zero(),
                denominator: IntPolynomial::one(),
            };
        }
        let g = self.numerator.gcd(&self.denominator);
        let mut num = self.numerator.div_exact(&g);
        let mut den = self.denominator.div_exact(&g);
        // Any divisor of D has constant ±1, so renormalize to D(0) = 1.
        if den.coeff(0) == -BigInt::one() {
            num = num.scale(&-BigInt::one());
            den = den.scale(&-BigInt::one());
        }
        RationalGF {
            numerator: num,
            denominator: den,
        }
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Which counting problem a [`CountSequence`] answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// Closed walks of length `n` at the origin.
    Periodic,
    /// Closed walks that first return to the origin at step `n`.
    Primitive,
}

/// An initial segment `a(1), a(2), …` of a walk-count sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    origin: State,
    kind: SequenceKind,
    terms: Vec<BigUint>,
}

impl CountSequence {
    pub fn origin(&self) -> &State {
        &self.origin
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// The terms `a(1)..a(len)`.
    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-verifies every `stride`-th term against the brute-force oracle.
    pub fn spot_check(&self, stride: usize) -> Result<()> {
        let stride = stride.max(1);
        for index in (stride..=self.terms.len()).step_by(stride) {
            let oracle = match self.kind {
                SequenceKind::Periodic => count_walks_brute(&self.origin, &self.origin, index)?,
                SequenceKind::Primitive => count_first_return(&self.origin, index)?,
            };
            if oracle != self.terms[index - 1] {
                return Err(Error::SpotCheckMismatch {
                    index,
                    from_recurrence: self.terms[index - 1].to_string(),
                    from_oracle: oracle.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// The number of closed walks of length `1..=terms` at `origin`: the
/// first `h(α)+r−1` terms by brute force, the rest by the universal
/// recurrence.
pub fn periodic_sequence(origin: &State, terms: usize) -> Result<CountSequence> {
    let values = periodic_terms(origin, terms)?;
    Ok(CountSequence {
        origin: origin.clone(),
        kind: SequenceKind::Periodic,
        terms: values
            .into_iter()
            .map(|t| t.to_biguint().expect("walk counts are nonnegative"))
            .collect(),
    })
}

fn periodic_terms(origin: &State, terms: usize) -> Result<Vec<BigInt>> {
    let matrix = TransferMatrix::build(origin.balls(), origin.capacity())?;
    let recurrence = LinearRecurrence::from_char_poly(&char_poly(&matrix))?;
    let base_len = origin.height() + recurrence.order() - 1;
    // Seed with a(0) = 1 (the empty closed walk) so the recurrence can
    // start right after the brute-force terms even when h(α) = 0.
    let mut history = vec![BigInt::one()];
    for n in 1..=base_len.min(terms) {
        history.push(BigInt::from(count_walks_brute(origin, origin, n)?));
    }
    while history.len() <= terms {
        let next = recurrence.next_term(&history);
        history.push(next);
    }
    history.remove(0);
    history.truncate(terms);
    Ok(history)
}

/// The generating function `Σ_{n≥1} a(n) xⁿ` of the periodic counts at
/// `origin`, as the unreduced fraction whose denominator is the reversed
/// characteristic polynomial.
pub fn periodic_gf(origin: &State) -> Result<RationalGF> {
    let matrix = TransferMatrix::build(origin.balls(), origin.capacity())?;
    let p = char_poly(&matrix);
    let r = p.degree().expect("characteristic polynomial is monic");
    // The series starts at x^1, so the product D·F is only guaranteed to
    // vanish from degree r + max(h, 1): effective height 1 for the empty
    // state, whose function is x/(1−x).
    let h = origin.height().max(1);
    let denominator = p.reversed(r);
    // N = D·F truncated below degree r+h; the tail of the product must
    // vanish, otherwise the recurrence cutoff is wrong.
    let check = r + 1;
    let terms = periodic_terms(origin, r + h - 1 + check)?;
    let series = {
        let mut c = vec![BigInt::zero()];
        c.extend(terms);
        IntPolynomial::new(c)
    };
    let product = denominator.mul(&series);
    let mut numerator = vec![BigInt::zero(); r + h];
    for (power, item) in numerator.iter_mut().enumerate() {
        *item = product.coeff(power);
    }
    for power in r + h..r + h + check {
        assert!(
            product.coeff(power).is_zero(),
            "numerator truncation left a residue at degree {power} for state {origin}"
        );
    }
    RationalGF::new(IntPolynomial::new(numerator), denominator)
}

/// The number of first-return closed walks of length `1..=terms` at
/// `origin`, through the generating-function transform.
pub fn primitive_sequence(origin: &State, terms: usize) -> Result<CountSequence> {
    let gf = periodic_gf(origin)?.primitive_transform()?;
    Ok(CountSequence {
        origin: origin.clone(),
        kind: SequenceKind::Primitive,
        terms: gf
            .expand(terms)
            .into_iter()
            .map(|t| t.to_biguint().expect("first-return counts are nonnegative"))
            .collect(),
    })
}
