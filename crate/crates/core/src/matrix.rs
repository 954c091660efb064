//! Dense square matrices over arbitrary-precision nonnegative integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Row-major square matrix of `BigUint` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SquareMatrix {
    size: usize,
    data: Vec<BigUint>,
}

impl SquareMatrix {
    pub fn zero(size: usize) -> Self {
        SquareMatrix {
            size,
            data: vec![BigUint::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.data[i * size + i] = BigUint::one();
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.data[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigUint) {
        self.data[row * self.size + col] = value;
    }

    pub fn mul(&self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut exponent: usize) -> SquareMatrix {
        let mut result = Self::identity(self.size);
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = result.mul(&base);
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(self.size, v.len());
        (0..self.size)
            .map(|i| {
                let mut acc = BigUint::zero();
                for (j, value) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !value.is_zero() {
                        acc += a * value;
                    }
                }
                acc
            })
            .collect()
    }
}
