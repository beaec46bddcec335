use crate::error::{check_dim, invalid, Result};
use crate::scalar::Scalar;

use super::{Direction, Point};

/// `max_{p in P} p . v`.
pub fn directional_extent<T: Scalar>(points: &[Point<T>], v: &Direction<T>) -> Result<T> {
    get_max(points, v).map(|p| p.dot(v.coords()))
}

/// Earliest point achieving the maximum dot product with `t`.
pub fn get_max<'a, T: Scalar>(points: &'a [Point<T>], t: &Direction<T>) -> Result<&'a Point<T>> {
    let mut best: Option<(usize, T)> = None;
    for (i, p) in points.iter().enumerate() {
        check_dim(t.dim(), p.dim())?;
        let v = p.dot(t.coords());
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    let (idx, _) = best.ok_or_else(|| invalid("argmax of an empty point set"))?;
    Ok(&points[idx])
}

/// O(1)-state online argmax in a fixed direction with first-arrival tie-breaking.
#[derive(Clone, Debug)]
pub struct StreamingArgMax<T> {
    direction: Direction<T>,
    best: Option<(Point<T>, T)>,
}

impl<T: Scalar> StreamingArgMax<T> {
    pub fn new(direction: Direction<T>) -> Self {
        Self {
            direction,
            best: None,
        }
    }

    pub fn direction(&self) -> &Direction<T> {
        &self.direction
    }

    /// Considers `p`; returns whether it became the new witness.
    #[inline]
    pub fn offer(&mut self, p: &Point<T>) -> bool {
        let v = p.dot(self.direction.coords());
        let replace = match &self.best {
            None => true,
            Some((_, b)) => v > *b,
        };
        if replace {
            self.best = Some((p.clone(), v));
        }
        replace
    }

    pub fn best(&self) -> Option<&Point<T>> {
        self.best.as_ref().map(|b| &b.0)
    }

    pub fn best_dot(&self) -> Option<T> {
        self.best.as_ref().map(|b| b.1)
    }

    pub fn into_best(self) -> Option<Point<T>> {
        self.best.map(|b| b.0)
    }
}
