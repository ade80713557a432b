//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All geometry, shape-function and analytic-solution code is written against
//! [`Real`], so it runs on `f32`, `f64`, and on the forward-mode [`Dual`]
//! numbers used to differentiate the closed-form reference solutions.
//!
//! [`Dual`]: crate::dual::Dual

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst};

/// Floating point scalar usable throughout the crate.
pub trait Real:
    Float
    + FloatConst
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
{
    /// Converts an `f64` literal. Never fails for the types implementing this trait.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal representable")
    }

    /// Primal value as `f64`, used for branch decisions and reporting.
    #[inline]
    fn re(self) -> f64 {
        self.to_f64().expect("finite primal value")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for [`Real::lit`].
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

#[inline]
pub(crate) fn dot<T: Real, const D: usize>(a: &[T; D], b: &[T; D]) -> T {
    let mut s = T::zero();
    for i in 0..D {
        s += a[i] * b[i];
    }
    s
}

#[inline]
pub(crate) fn norm<T: Real, const D: usize>(a: &[T; D]) -> T {
    dot(a, a).sqrt()
}

#[inline]
pub(crate) fn sub<T: Real, const D: usize>(a: &[T; D], b: &[T; D]) -> [T; D] {
    std::array::from_fn(|i| a[i] - b[i])
}

#[inline]
pub(crate) fn cross<T: Real>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

