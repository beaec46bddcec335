use std::ops::Index;

use smallvec::SmallVec;

use crate::error::{check_dim, invalid, Result};
use crate::scalar::Scalar;

pub(crate) type Coords<T> = SmallVec<[T; 4]>;

/// A point in `R^d` with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T> {
    coords: Coords<T>,
}

impl<T: Scalar> Point<T> {
    /// Builds a point, rejecting empty or non-finite coordinate lists.
    pub fn new<I: IntoIterator<Item = T>>(coords: I) -> Result<Self> {
        let coords: Coords<T> = coords.into_iter().collect();
        if coords.is_empty() {
            return Err(invalid("point must have at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("point coordinates must be finite"));
        }
        Ok(Self { coords })
    }

    /// Planar point. Coordinates are assumed finite.
    #[inline]
    pub fn xy(x: T, y: T) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        let mut coords = Coords::new();
        coords.push(x);
        coords.push(y);
        Self { coords }
    }

    #[inline]
    pub fn xyz(x: T, y: T, z: T) -> Self {
        debug_assert!(x.is_finite() && y.is_finite() && z.is_finite());
        let mut coords = Coords::new();
        coords.push(x);
        coords.push(y);
        coords.push(z);
        Self { coords }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    #[inline]
    pub fn x(&self) -> T {
        self.coords[0]
    }

    #[inline]
    pub fn y(&self) -> T {
        self.coords[1]
    }

    #[inline]
    pub fn z(&self) -> T {
        self.coords[2]
    }

    #[inline]
    pub fn dot(&self, v: &[T]) -> T {
        self.coords
            .iter()
            .zip(v)
            .fold(T::zero(), |acc, (a, b)| acc + *a * *b)
    }

    #[inline]
    pub fn dist2(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |acc, (a, b)| acc + (*a - *b) * (*a - *b))
    }

    #[inline]
    pub fn dist(&self, other: &Self) -> T {
        self.dist2(other).sqrt()
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> T {
        self.coords
            .iter()
            .fold(T::zero(), |m, c| if c.abs() > m { c.abs() } else { m })
    }

    /// Drops every coordinate past the first `dim`.
    pub fn truncated(&self, dim: usize) -> Self {
        Self {
            coords: self.coords.iter().take(dim).copied().collect(),
        }
    }

    /// Appends one coordinate (used to lift planar data into `R^3`).
    pub fn lifted(&self, extra: T) -> Self {
        let mut coords = self.coords.clone();
        coords.push(extra);
        Self { coords }
    }

    /// Lossless-as-possible conversion between scalar types.
    pub fn cast<U: Scalar>(&self) -> Point<U> {
        Point {
            coords: self.coords.iter().map(|c| U::lit(c.to_f64_lossy())).collect(),
        }
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

/// A unit vector in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction<T> {
    coords: Coords<T>,
}

impl<T: Scalar> Direction<T> {
    /// Accepts coordinates that already have unit norm.
    pub fn new<I: IntoIterator<Item = T>>(coords: I) -> Result<Self> {
        let coords: Coords<T> = coords.into_iter().collect();
        if coords.is_empty() || coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("direction must be a nonempty finite vector"));
        }
        let norm = norm(&coords);
        if (norm - T::one()).abs() > T::lit(T::UNIT_TOL) {
            return Err(invalid(format!("direction norm {norm} is not 1")));
        }
        Ok(Self { coords })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized<I: IntoIterator<Item = T>>(coords: I) -> Result<Self> {
        let mut coords: Coords<T> = coords.into_iter().collect();
        if coords.is_empty() || coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("direction must be a nonempty finite vector"));
        }
        let n = norm(&coords);
        if n <= T::min_positive_value() {
            return Err(invalid("cannot normalize the zero vector"));
        }
        for c in coords.iter_mut() {
            *c = *c / n;
        }
        Ok(Self { coords })
    }

    /// Planar direction at angle `theta` (radians, counterclockwise from +x).
    pub fn from_angle(theta: T) -> Self {
        let mut coords = Coords::new();
        coords.push(theta.cos());
        coords.push(theta.sin());
        Self { coords }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn cast<U: Scalar>(&self) -> Direction<U> {
        Direction {
            coords: self.coords.iter().map(|c| U::lit(c.to_f64_lossy())).collect(),
        }
    }
}

#[inline]
pub(crate) fn norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, c| a + *c * *c).sqrt()
}

/// Common dimension of a nonempty point list.
pub(crate) fn common_dim<T: Scalar>(points: &[Point<T>]) -> Result<Option<usize>> {
    let Some(first) = points.first() else {
        return Ok(None);
    };
    let d = first.dim();
    for p in points {
        check_dim(d, p.dim())?;
    }
    Ok(Some(d))
}
