//! Floating-point scalar abstraction.
//!
//! All approximate arithmetic in this crate is generic over [`Real`]
//! (`f32` or `f64`); exact data — frequency coordinates, class-algebra
//! structure constants — always lives in arbitrary-precision rationals
//! and never goes through this trait.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + 'static {
    /// Conversion from `f64` (exact when `Self = f64`).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to every Real")
    }

    /// A tolerance that is `base` at f64 precision but never below a small
    /// multiple of the machine epsilon of `Self`.
    fn scaled_tol(base: f64) -> Self {
        let floor = Self::epsilon() * Self::of(32.0);
        Self::of(base).max(floor)
    }
}

impl Real for f32 {}
impl Real for f64 {}
