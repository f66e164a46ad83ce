//! Scalar abstraction for the analytic layer.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating scalar the analytic layer is generic over: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lift an `f64` constant. Panics only if the target type cannot
    /// represent any finite value, which does not happen for f32/f64.
    fn c(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite f64 constant")
    }

    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer constant")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
