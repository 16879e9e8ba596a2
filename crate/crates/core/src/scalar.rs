//! Scalar abstraction shared by the numerical modules.
//!
//! Every floating-point routine in this crate is written against [`Real`],
//! so the same walk can be run in `f32` for quick exploration or in `f64`
//! for the tolerances used in the test suites. Exact coefficient work lives
//! in [`crate::analytic`] and uses big rationals instead.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, used for literal constants.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a signed integer (momentum class, order).
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite float converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `e^{i phase}`.
pub(crate) fn cis<T: Real>(phase: T) -> Complex<T> {
    Complex::new(phase.cos(), phase.sin())
}

/// `i^power` for any integer power, exact (no trigonometry).
pub(crate) fn i_pow<T: Real>(power: i64) -> Complex<T> {
    match power.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// `(-1)^power`.
pub(crate) fn parity_sign<T: Real>(power: i64) -> T {
    if power.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}
