//! Scalar abstraction for the foundational numerics.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Real floating-point scalar accepted by the generic special functions,
/// quadrature rules and dense determinants.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    /// Converts a signed integer.
    #[inline]
    fn int(k: i64) -> Self {
        Self::from_i64(k).expect("integer representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
