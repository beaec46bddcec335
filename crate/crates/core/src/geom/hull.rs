use std::cmp::Ordering;

use crate::error::{check_dim, Result};
use crate::scalar::Scalar;

use super::orient::{cross2, orient2, Orientation};
use super::Point;

/// Strictly convex polygon, vertices counterclockwise.
///
/// Zero, one and two vertices represent the empty set, a point and a segment.
#[derive(Clone, Debug, PartialEq)]
pub struct Hull2D<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Hull2D<T> {
    pub fn empty() -> Self {
        Self { vertices: Vec::new() }
    }

    /// Convex hull of `points`; see [`convex_hull_2d`].
    pub fn from_points(points: &[Point<T>]) -> Result<Self> {
        convex_hull_2d(points)
    }

    /// Wraps a vertex cycle the caller knows to be strictly convex and CCW.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point<T>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point<T>> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`. A segment yields its single edge once.
    pub fn edges(&self) -> impl Iterator<Item = (&Point<T>, &Point<T>)> {
        let n = self.vertices.len();
        let count = match n {
            0 | 1 => 0,
            2 => 1,
            _ => n,
        };
        (0..count).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Hull of the current vertices plus one more point.
    pub fn with_point(&self, p: &Point<T>) -> Result<Self> {
        let mut pts = Vec::with_capacity(self.vertices.len() + 1);
        pts.extend_from_slice(&self.vertices);
        pts.push(p.clone());
        convex_hull_2d(&pts)
    }

    /// Planar containment (boundary included), exact sign tests.
    pub fn contains(&self, p: &Point<T>) -> bool {
        match self.vertices.len() {
            0 => false,
            1 | 2 => super::distance::dist_hull_xy(p, self) <= T::zero(),
            _ => self
                .edges()
                .all(|(a, b)| cross2(a, b, p) >= T::zero()),
        }
    }

    /// Every consecutive turn is strictly counterclockwise and no vertex repeats.
    pub fn is_strictly_convex(&self) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return n < 2 || self.vertices[0] != self.vertices[1];
        }
        (0..n).all(|i| {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let c = &self.vertices[(i + 2) % n];
            cross2(a, b, c) > T::zero()
        })
    }
}

fn lex_cmp<T: Scalar>(a: &Point<T>, b: &Point<T>) -> Ordering {
    a.x()
        .partial_cmp(&b.x())
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.y().partial_cmp(&b.y()).unwrap_or(Ordering::Equal))
}

/// Andrew's monotone chain.
///
/// Returns the strict extreme points, counterclockwise, starting from the
/// lexicographically smallest. Duplicates and points on hull edges are dropped.
pub fn convex_hull_2d<T: Scalar>(points: &[Point<T>]) -> Result<Hull2D<T>> {
    for p in points {
        check_dim(2, p.dim())?;
    }
    let mut sorted: Vec<&Point<T>> = points.iter().collect();
    sorted.sort_by(|a, b| lex_cmp(a, b));
    sorted.dedup_by(|a, b| a == b);

    if sorted.len() <= 2 {
        return Ok(Hull2D {
            vertices: sorted.into_iter().cloned().collect(),
        });
    }

    let mut chain: Vec<&Point<T>> = Vec::with_capacity(2 * sorted.len());
    for &p in &sorted {
        while chain.len() >= 2
            && orient2(chain[chain.len() - 2], chain[chain.len() - 1], p)
                != Orientation::Counterclockwise
        {
            chain.pop();
        }
        chain.push(p);
    }
    let lower_len = chain.len() + 1;
    for &p in sorted.iter().rev().skip(1) {
        while chain.len() >= lower_len
            && orient2(chain[chain.len() - 2], chain[chain.len() - 1], p)
                != Orientation::Counterclockwise
        {
            chain.pop();
        }
        chain.push(p);
    }
    chain.pop();

    Ok(Hull2D {
        vertices: chain.into_iter().cloned().collect(),
    })
}
