//! Scalar abstraction for the exact container types.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

/// A commutative ring scalar with exact equality.
///
/// Implemented by any `num` scalar with signed exact arithmetic, in
/// particular `BigInt` and `BigRational` (the crate aliases `Int` and `Rat`).
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Debug
    + Display
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
{
}

impl<T> Scalar for T where
    T: Clone
        + Eq
        + Ord
        + Debug
        + Display
        + Zero
        + One
        + Signed
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
        + SubAssign
{
}

/// A scalar that additionally supports exact division, for row reduction.
pub trait FieldScalar: Scalar + std::ops::Div<Output = Self> {}

impl<T> FieldScalar for T where T: Scalar + std::ops::Div<Output = T> {}
