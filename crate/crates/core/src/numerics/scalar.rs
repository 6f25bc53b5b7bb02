//! Scalar abstraction for the dense linear algebra and integrators.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, NumAssign};

/// Real floating-point type the numerics layer is generic over.
///
/// Implemented for `f32` and `f64`. Tolerances inside the numerics layer are
/// expressed in multiples of [`Float::epsilon`] so both widths behave sensibly.
pub trait Real:
    Float + FloatConst + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    fn from_f64(value: f64) -> Self;

    fn to_f64_lossy(self) -> f64;
}

impl Real for f32 {
    fn from_f64(value: f64) -> Self {
        value as f32
    }

    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    fn from_f64(value: f64) -> Self {
        value
    }

    fn to_f64_lossy(self) -> f64 {
        self
    }
}

/// Complex number over a [`Real`] scalar.
pub type Complex<T> = num_complex::Complex<T>;

#[inline]
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x)
}
