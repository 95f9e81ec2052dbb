//! Scalar abstraction shared by every numerical module.
//!
//! All physics in this crate is written against [`Real`], so the same code
//! runs in `f32` or `f64`. Tolerances that depend on precision live here as
//! associated constants instead of being scattered through the modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable by the library (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Residual accepted for exact algebraic identities (unitarity, eigen relations).
    const IDENTITY_TOL: Self;
    /// Accepted deviation of a "unit" vector norm from one.
    const UNIT_TOL: Self;
    /// Relative tolerance used when deciding that two margins tie.
    const TIE_TOL: Self;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! impl_real {
    ($t:ty, $ident:expr, $unit:expr, $tie:expr) => {
        impl Real for $t {
            const IDENTITY_TOL: Self = $ident;
            const UNIT_TOL: Self = $unit;
            const TIE_TOL: Self = $tie;
        }
    };
}

impl_real!(f64, 1e-12, 1e-9, 1e-12);
impl_real!(f32, 1e-5, 1e-4, 1e-6);

/// Complex number over a [`Real`] scalar.
pub type Cplx<T> = Complex<T>;

/// Shorthand for a purely real complex value.
#[inline]
pub fn re<T: Real>(x: T) -> Cplx<T> {
    Complex::new(x, T::zero())
}

/// `e^{i x}`.
#[inline]
pub fn cis<T: Real>(x: T) -> Cplx<T> {
    Complex::new(x.cos(), x.sin())
}

#[inline]
pub fn imag_unit<T: Real>() -> Cplx<T> {
    Complex::new(T::zero(), T::one())
}
