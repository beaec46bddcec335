use crate::error::{check_dim, Result};
use crate::scalar::{fmax, Scalar};

use super::Point;

/// Turn direction of an ordered point triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
    Collinear,
}

/// Classifies `(a, b, c)` by the sign of `(b - a) x (c - a)`.
///
/// Values within `ORIENT_REL_TOL * s^2` of zero are collinear, where `s` is the
/// largest coordinate magnitude among the three points.
pub fn orientation<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Result<Orientation> {
    check_dim(2, a.dim())?;
    check_dim(2, b.dim())?;
    check_dim(2, c.dim())?;
    Ok(orient2(a, b, c))
}

#[inline]
pub(crate) fn cross2<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x())
}

#[inline]
pub(crate) fn orient_tol<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    let s = fmax(fmax(a.max_abs(), b.max_abs()), c.max_abs());
    T::lit(T::ORIENT_REL_TOL) * s * s
}

#[inline]
pub(crate) fn orient2<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Orientation {
    let v = cross2(a, b, c);
    let tol = orient_tol(a, b, c);
    if v > tol {
        Orientation::Counterclockwise
    } else if v < -tol {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}
