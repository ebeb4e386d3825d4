use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient ring for series and matrices.
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> {}

impl<T> Scalar for T where T: Num + Clone + Debug + Neg<Output = T> {}

/// A [`Scalar`] in which division by nonzero elements is exact.
///
/// `log`, `exp` and Gaussian elimination require this. `BigInt` is a
/// `Scalar` but deliberately not a `Field`.
pub trait Field: Scalar + FromPrimitive {}

impl Field for num_rational::BigRational {}
impl Field for num_rational::Rational64 {}
impl Field for f64 {}
