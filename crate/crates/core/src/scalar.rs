//! Scalar abstraction shared by the geometric core.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar used throughout the geometric core: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Current global tolerance, floored at a small multiple of machine epsilon.
    #[inline]
    fn tol() -> Self {
        Self::lit(crate::tolerance::get()).max(Self::epsilon() * Self::lit(256.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[inline]
pub(crate) fn sq<T: Real>(v: T) -> T {
    v * v
}
