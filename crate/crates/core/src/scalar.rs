//! Scalar abstraction shared by the numeric core.
//!
//! Everything that touches matrices is generic over [`Real`], which is
//! implemented for `f32` and `f64`. Matrix elements are `Complex<T>`.

use num_complex::Complex;
use num_traits::ToPrimitive;

/// Real floating-point type usable by both the 3-vector geometry
/// (nalgebra) and the dense Hermitian linear algebra (faer).
pub trait Real:
    nalgebra::RealField + faer::traits::RealField + Copy + ToPrimitive + Send + Sync + 'static
{
    /// Tolerance used when checking structural properties (Hermiticity,
    /// unit norms) of quantities built in this precision.
    fn structural_tol() -> Self;
}

impl Real for f32 {
    fn structural_tol() -> Self {
        1e-5
    }
}

impl Real for f64 {
    fn structural_tol() -> Self {
        1e-10
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

/// Converts `T` into `f64`.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn creal<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn cabs<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}
