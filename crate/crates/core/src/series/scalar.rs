use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// Coefficient field for [`Series`](super::Series).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The non-negative square root, if the field contains it.
    fn principal_sqrt(&self) -> Option<Self>;
}

impl Scalar for f64 {
    fn principal_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Scalar for f32 {
    fn principal_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

/// Only perfect squares of rationals have a rational root.
impl Scalar for BigRational {
    fn principal_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let root = |k: &BigInt| {
            let r = k.sqrt();
            (&r * &r == *k).then_some(r)
        };
        Some(BigRational::new(root(self.numer())?, root(self.denom())?))
    }
}
