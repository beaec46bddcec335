//! Scalar abstraction shared by every geometric routine.
//!
//! All algorithms are written against [`Scalar`] so the same code runs in
//! `f64` (the default everywhere in the CLI and the benches) and `f32`.
//! Tolerances are per-type associated constants: the `f64` values are the
//! documented defaults, the `f32` values are widened to that type's precision.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Sum
    + Default
    + Send
    + Sync
    + 'static
{
    /// Relative orientation tolerance; multiplied by the squared coordinate scale.
    const ORIENT_REL_TOL: f64;
    /// Absolute slack applied to every distance comparison against epsilon.
    const CHECKER_SLACK: f64;
    /// Allowed deviation of a [`Direction`](crate::Direction) norm from 1.
    const UNIT_TOL: f64;
    /// Default additive accuracy of the d-dimensional projection.
    const ND_TOL: f64;

    /// Converts an `f64` literal. Panics only for values the type cannot hold.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const ORIENT_REL_TOL: f64 = 1e-12;
    const CHECKER_SLACK: f64 = 1e-9;
    const UNIT_TOL: f64 = 1e-12;
    const ND_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const ORIENT_REL_TOL: f64 = 1e-6;
    const CHECKER_SLACK: f64 = 1e-4;
    const UNIT_TOL: f64 = 1e-6;
    const ND_TOL: f64 = 1e-4;
}

/// `max` that ignores the NaN-propagation subtleties of `Float::max` ordering.
#[inline]
pub(crate) fn fmax<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

#[inline]
pub(crate) fn fmin<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}
