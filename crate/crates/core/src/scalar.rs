//! Scalar abstraction shared by every polynomial routine in the crate.
//!
//! Polynomial identities are evaluated through [`Scalar`] so that the same
//! code runs in `f64`, in double-double ([`twofloat::TwoFloat`]), and in exact
//! arithmetic ([`num_rational::BigRational`] and [`crate::exact::Surd`]).
//! Operations that need square roots or comparisons require [`Real`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use twofloat::TwoFloat;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// Ordered scalars with a square root.
pub trait Real: Scalar + Copy + PartialOrd {
    fn from_f64(x: f64) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
}

impl Scalar for TwoFloat {
    fn zero() -> Self {
        TwoFloat::from(0.0)
    }
    fn one() -> Self {
        TwoFloat::from(1.0)
    }
    fn from_i64(n: i64) -> Self {
        TwoFloat::from(n as f64)
    }
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
    fn is_zero(&self) -> bool {
        self.hi() == 0.0
    }
}

impl Real for TwoFloat {
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn sqrt(self) -> Self {
        if self.hi() <= 0.0 {
            return TwoFloat::from(0.0);
        }
        TwoFloat::sqrt(self)
    }
    fn abs(self) -> Self {
        TwoFloat::abs(&self)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Exact rational from a finite `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Converts a slice of scalars to `f64`.
pub fn to_f64_vec<S: Scalar>(xs: &[S]) -> Vec<f64> {
    xs.iter().map(Scalar::to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twofloat_carries_extra_digits() {
        let a = TwoFloat::from(1.0) + TwoFloat::from(1e-20);
        let b = a - TwoFloat::from(1.0);
        assert!((Scalar::to_f64(&b) - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn rational_roundtrip() {
        let q = rational_from_f64(0.1);
        assert_eq!(Scalar::to_f64(&q), 0.1);
        assert!(Scalar::is_zero(&(q.clone() - q)));
    }
}
