//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar: `f32`, `f64`, or the double-double `TwoFloat`
/// with the `twofloat` feature.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    #[inline]
    fn cast(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable in scalar type")
    }

    /// Lossless-enough view as `f64`, used for reporting and seeding.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `TwoFloat` relies on the `num-traits` default for `from_f64`, which
/// truncates through `i64`, so conversion goes through its exact `From<f64>`.
/// Its division is only `f64`-accurate; sums, products and `sqrt` carry the
/// full double-double precision.
#[cfg(feature = "twofloat")]
impl Scalar for twofloat::TwoFloat {
    #[inline]
    fn cast(v: f64) -> Self {
        twofloat::TwoFloat::from(v)
    }
}
