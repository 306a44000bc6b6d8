//! Scalar abstraction for real-valued scores.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar used for scores, metrics, and simulation means.
///
/// Implemented by `f32` and `f64`; everything downstream of graph topology
/// is generic over it.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum<Self> + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion for diagnostics and fixed-precision output.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + NumAssign + Sum<Self> + Debug + Display + Send + Sync + 'static
{
}

/// Converts an exact integer count into a scalar.
pub(crate) fn from_count<F: Scalar>(n: usize) -> F {
    F::from_usize(n).expect("count representable as scalar")
}
