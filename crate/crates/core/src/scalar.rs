//! Exact scalar fields.
//!
//! Everything in the crate is written against [`Scalar`]. Floating point types
//! do not implement it: ranks and kernels are only meaningful over exact fields.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_int(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_rational(r: &BigRational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    fn from_frac(p: i64, q: i64) -> Self {
        Self::from_int(p) / Self::from_int(q)
    }

    /// Canonical text form. Rationals print as `p/q` (or `p` when integral).
    fn to_exact_string(&self) -> String;

    /// `Some(n)` when the value is an integer that fits in `i64`.
    fn to_i64(&self) -> Option<i64>;

    fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            k >>= 1;
        }
        acc
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_frac(p: i64, q: i64) -> Self {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn to_exact_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        let n = self.numer();
        if n.abs() > BigInt::from(i64::MAX) {
            return None;
        }
        n.to_string().parse().ok()
    }
}

/// Rational from an integer.
pub fn q(n: i64) -> BigRational {
    BigRational::from_int(n)
}

/// Rational `p/d`.
pub fn qf(p: i64, d: i64) -> BigRational {
    BigRational::from_frac(p, d)
}

pub fn factorial<S: Scalar>(n: u32) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * S::from_int(k))
}

pub fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(qf(6, 4).to_exact_string(), "3/2");
        assert_eq!(q(-7).to_exact_string(), "-7");
        assert_eq!(qf(-1, 2).to_i64(), None);
        assert_eq!(q(12).to_i64(), Some(12));
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(factorial::<BigRational>(5), q(120));
        assert_eq!(qf(2, 3).pow(3), qf(8, 27));
    }
}
