//! Scalar abstraction for the numeric core.
//!
//! The cable, sequence-reduction and fitting math is written against [`Real`]
//! so it can run at `f32` or `f64`. The solver and case-file layers are
//! `f64`-only; their tolerances are calibrated for double precision.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Convert an `f64` literal into this scalar type.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the generic scalar.
pub type Cplx<T> = Complex<T>;

/// Complex number at the default `f64` precision.
pub type C64 = Complex<f64>;

/// Vacuum permeability in H/m.
pub fn mu_0<T: Real>() -> T {
    T::of(4.0e-7) * T::PI()
}

/// Vacuum permittivity in F/m.
pub fn epsilon_0<T: Real>() -> T {
    T::of(8.854_187_812_8e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_f64_reference() {
        assert!((mu_0::<f64>() - 1.256_637_061_4359e-6).abs() < 1e-16);
        let m32: f32 = mu_0();
        assert!((f64::from(m32) - 1.256_637e-6).abs() < 1e-12);
    }
}
