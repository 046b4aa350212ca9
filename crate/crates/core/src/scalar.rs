use std::fmt::{Debug, Display};

use nalgebra::RealField;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar usable by the numerical modules: `f32` or `f64`.
///
/// Both `Float` and `RealField` provide elementary functions with the same
/// names, so generic code bounded by `Real` calls them through `Float::`.
pub trait Real:
    Float + FloatConst + FromPrimitive + RealField + Copy + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` constant.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
