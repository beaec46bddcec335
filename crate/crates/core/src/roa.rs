//! One-pass planar epsilon-hull for randomly ordered streams.
//!
//! A point is inserted when it is farther than `eps` from the current hull;
//! after every insertion the stored set is pruned back to the strict vertices
//! of its hull. Under random arrival order the stored set stays within a
//! logarithmic factor of the optimum.

use crate::error::{check_dim, invalid, Result};
use crate::geom::{dist_hull_xy, Hull2D, Point};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RoaVariant {
    /// Insert and then delete interior points.
    #[default]
    Full,
    /// Insert only; stored points are never removed.
    InsertionOnly,
}

#[derive(Clone, Debug)]
pub struct RoaState<T> {
    eps: T,
    variant: RoaVariant,
    hull: Hull2D<T>,
    /// Every inserted point, kept only by the insertion-only variant.
    inserted: Vec<Point<T>>,
    n_seen: usize,
    peak_size: usize,
}

impl<T: Scalar> RoaState<T> {
    pub fn new(eps: T) -> Result<Self> {
        Self::with_variant(eps, RoaVariant::Full)
    }

    pub fn with_variant(eps: T, variant: RoaVariant) -> Result<Self> {
        if !(eps >= T::zero()) || !eps.is_finite() {
            return Err(invalid(format!("eps must be finite and nonnegative, got {eps}")));
        }
        Ok(Self {
            eps,
            variant,
            hull: Hull2D::empty(),
            inserted: Vec::new(),
            n_seen: 0,
            peak_size: 0,
        })
    }

    /// Processes one stream point; returns whether it was stored.
    pub fn insert(&mut self, p: &Point<T>) -> Result<bool> {
        check_dim(2, p.dim())?;
        self.n_seen += 1;
        if dist_hull_xy(p, &self.hull) <= self.eps + T::lit(T::CHECKER_SLACK) {
            return Ok(false);
        }
        self.hull = self.hull.with_point(p)?;
        if self.variant == RoaVariant::InsertionOnly {
            self.inserted.push(p.clone());
        }
        self.peak_size = self.peak_size.max(self.len());
        Ok(true)
    }

    pub fn extend<'a, I>(&mut self, points: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Point<T>>,
    {
        for p in points {
            self.insert(p)?;
        }
        Ok(())
    }

    /// Copy of the stored subset. For the full variant these are the hull
    /// vertices in counterclockwise order.
    pub fn current(&self) -> Vec<Point<T>> {
        self.points().to_vec()
    }

    pub fn points(&self) -> &[Point<T>] {
        match self.variant {
            RoaVariant::Full => self.hull.vertices(),
            RoaVariant::InsertionOnly => &self.inserted,
        }
    }

    pub fn hull(&self) -> &Hull2D<T> {
        &self.hull
    }

    pub fn len(&self) -> usize {
        self.points().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    pub fn variant(&self) -> RoaVariant {
        self.variant
    }

    pub fn n_seen(&self) -> usize {
        self.n_seen
    }

    pub fn peak_size(&self) -> usize {
        self.peak_size
    }
}
