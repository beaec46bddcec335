//! Point-to-convex-hull distances.
//!
//! The planar routine is exact up to rounding. The d-dimensional routine runs
//! Wolfe's minimum-norm-point iteration (a conditional-gradient method with
//! exact corral re-solves) on the translated point cloud and stops once the
//! separating-hyperplane gap certifies the requested additive accuracy.

use crate::error::{check_dim, invalid, Error, Result};
use crate::scalar::{fmin, Scalar};

use super::hull::Hull2D;
use super::orient::cross2;
use super::point::common_dim;
use super::Point;

/// Iteration cap for the d-dimensional projection (major plus minor steps).
pub const ND_ITERATION_CAP: usize = 100_000;

/// Distance from `p` to the region bounded by `h`.
///
/// An empty hull yields `+inf`, which callers can test with `is_infinite`.
pub fn dist_point_hull_2d<T: Scalar>(p: &Point<T>, h: &Hull2D<T>) -> Result<T> {
    check_dim(2, p.dim())?;
    Ok(dist_hull_xy(p, h))
}

pub(crate) fn dist_hull_xy<T: Scalar>(p: &Point<T>, h: &Hull2D<T>) -> T {
    let v = h.vertices();
    match v.len() {
        0 => T::infinity(),
        1 => dist2_xy(p, &v[0]).sqrt(),
        2 => seg_dist_xy(p, &v[0], &v[1]),
        _ => {
            let mut inside = true;
            let mut best = T::infinity();
            for (a, b) in h.edges() {
                if cross2(a, b, p) < T::zero() {
                    inside = false;
                }
                best = fmin(best, seg_dist_xy(p, a, b));
            }
            if inside {
                T::zero()
            } else {
                best
            }
        }
    }
}

/// Distance from `p` to the polygon boundary (not the filled region).
pub(crate) fn dist_boundary_xy<T: Scalar>(p: &Point<T>, h: &Hull2D<T>) -> T {
    let v = h.vertices();
    match v.len() {
        0 => T::infinity(),
        1 => dist2_xy(p, &v[0]).sqrt(),
        _ => h
            .edges()
            .fold(T::infinity(), |m, (a, b)| fmin(m, seg_dist_xy(p, a, b))),
    }
}

#[inline]
pub(crate) fn dist2_xy<T: Scalar>(a: &Point<T>, b: &Point<T>) -> T {
    let dx = a.x() - b.x();
    let dy = a.y() - b.y();
    dx * dx + dy * dy
}

/// Distance from `p` to the closed segment `[a, b]` in the plane.
#[inline]
pub(crate) fn seg_dist_xy<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    let ex = b.x() - a.x();
    let ey = b.y() - a.y();
    let len2 = ex * ex + ey * ey;
    let px = p.x() - a.x();
    let py = p.y() - a.y();
    if len2 <= T::zero() {
        return (px * px + py * py).sqrt();
    }
    let t = (px * ex + py * ey) / len2;
    let t = if t < T::zero() {
        T::zero()
    } else if t > T::one() {
        T::one()
    } else {
        t
    };
    let dx = px - t * ex;
    let dy = py - t * ey;
    (dx * dx + dy * dy).sqrt()
}

/// Outcome of a certified d-dimensional projection.
#[derive(Clone, Debug)]
pub struct NdProjection<T> {
    /// Distance from the query to the computed hull point (an upper bound).
    pub distance: T,
    /// Certified bound on `distance - true_distance`.
    pub error_bound: T,
    /// Convex weights over the input points (sparse: most are zero).
    pub weights: Vec<T>,
    pub iterations: usize,
}

/// Distance from `p` to `C(s)`. Always an upper bound; within `tol` of the
/// truth unless rounding stalls the iteration first, in which case the
/// achieved accuracy is [`NdProjection::error_bound`].
pub fn dist_point_hull_nd<T: Scalar>(p: &Point<T>, s: &[Point<T>], tol: T) -> Result<T> {
    project_onto_hull_nd(p, s, tol).map(|r| r.distance)
}

/// Whether `dist(p, C(s)) > threshold`, stopping as soon as the certified
/// interval excludes the threshold.
pub(crate) fn hull_distance_exceeds<T: Scalar>(
    p: &Point<T>,
    s: &[Point<T>],
    threshold: T,
    tol: T,
) -> Result<bool> {
    let r = project(p, s, tol, Some(threshold))?;
    Ok(r.distance > threshold)
}

/// Wolfe's minimum-norm-point iteration on `{s_i - p}`.
pub fn project_onto_hull_nd<T: Scalar>(
    p: &Point<T>,
    s: &[Point<T>],
    tol: T,
) -> Result<NdProjection<T>> {
    project(p, s, tol, None)
}

fn project<T: Scalar>(
    p: &Point<T>,
    s: &[Point<T>],
    tol: T,
    decide: Option<T>,
) -> Result<NdProjection<T>> {
    if s.is_empty() {
        return Err(invalid("distance to the hull of an empty set"));
    }
    if !(tol > T::zero()) {
        return Err(invalid("projection tolerance must be positive"));
    }
    let d = common_dim(s)?.unwrap_or(0);
    check_dim(d, p.dim())?;

    let ys: Vec<Vec<T>> = s
        .iter()
        .map(|q| q.coords().iter().zip(p.coords()).map(|(a, b)| *a - *b).collect())
        .collect();
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y);

    let start = (0..ys.len())
        .min_by(|&i, &j| {
            dot(&ys[i], &ys[i])
                .partial_cmp(&dot(&ys[j], &ys[j]))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("nonempty");
    let mut corral: Vec<usize> = vec![start];
    let mut lambda: Vec<T> = vec![T::one()];
    let mut x: Vec<T> = ys[start].clone();
    let mut iterations = 0usize;
    let mut prev_xx = T::infinity();
    let weight_floor = T::epsilon() * T::lit(16.0);

    let finish = |x: &[T], corral: &[usize], lambda: &[T], bound: T, iterations| {
        let mut weights = vec![T::zero(); ys.len()];
        for (&i, &l) in corral.iter().zip(lambda) {
            weights[i] = weights[i] + l;
        }
        NdProjection {
            distance: dot(x, x).sqrt(),
            error_bound: bound,
            weights,
            iterations,
        }
    };

    loop {
        iterations += 1;
        let xx = dot(&x, &x);
        let xn = xx.sqrt();
        let (j, min_dot) = ys
            .iter()
            .enumerate()
            .map(|(i, y)| (i, dot(&x, y)))
            .fold((0, T::infinity()), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
        let gap = xx - min_dot;
        // |x| - max(0, min_i <x, y_i>/|x|) bounds the excess over the true distance.
        let bound = if xn > T::zero() {
            fmin(xn, if gap > T::zero() { gap / xn } else { T::zero() })
        } else {
            T::zero()
        };
        let decided = decide.is_some_and(|t| xn <= t || xn - bound > t);
        // The norm decreases strictly in exact arithmetic; a rise means rounding.
        if bound <= tol || decided || xx >= prev_xx {
            return Ok(finish(&x, &corral, &lambda, bound, iterations));
        }
        prev_xx = xx;
        if iterations > ND_ITERATION_CAP {
            return Err(Error::Numeric {
                msg: format!("projection stalled after {iterations} iterations"),
                best_bound: bound.to_f64_lossy(),
            });
        }
        if corral.contains(&j) {
            // Rounding prevents further progress; x is still a hull point.
            return Ok(finish(&x, &corral, &lambda, bound, iterations));
        }
        let snapshot = (corral.clone(), lambda.clone());
        corral.push(j);
        lambda.push(T::zero());

        // Minor cycle: move toward the affine minimizer, dropping points that hit zero weight.
        loop {
            iterations += 1;
            let Some((alpha, affine_x)) = affine_min_norm(&ys, &corral) else {
                // Affinely dependent corral: fall back to the last major iterate.
                let (c, l) = &snapshot;
                return Ok(finish(&x, c, l, bound, iterations));
            };
            if alpha.iter().all(|&a| a > weight_floor) {
                lambda = alpha;
                x = affine_x;
                break;
            }
            let mut theta = T::one();
            for (l, a) in lambda.iter().zip(&alpha) {
                if *a <= weight_floor {
                    let denom = *l - *a;
                    if denom > T::zero() {
                        theta = fmin(theta, *l / denom);
                    }
                }
            }
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = theta * *a + (T::one() - theta) * *l;
            }
            let mut k = 0;
            while k < corral.len() {
                if lambda[k] <= weight_floor {
                    corral.swap_remove(k);
                    lambda.swap_remove(k);
                } else {
                    k += 1;
                }
            }
            if corral.is_empty() {
                let (c, l) = &snapshot;
                return Ok(finish(&x, c, l, bound, iterations));
            }
            let total = lambda.iter().fold(T::zero(), |a, b| a + *b);
            for l in lambda.iter_mut() {
                *l = *l / total;
            }
            if iterations > ND_ITERATION_CAP {
                return Err(Error::Numeric {
                    msg: "projection exceeded iteration cap".into(),
                    best_bound: bound.to_f64_lossy(),
                });
            }
        }
    }
}

/// Affine weights and location of the minimum-norm point of
/// `aff{y_i : i in corral}`.
///
/// The point is the residual of projecting the first corral point onto the
/// span of the differences, computed with twice-orthogonalized Gram-Schmidt
/// so its accuracy does not depend on the conditioning of the corral.
fn affine_min_norm<T: Scalar>(ys: &[Vec<T>], corral: &[usize]) -> Option<(Vec<T>, Vec<T>)> {
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y);
    let base = &ys[corral[0]];
    let k = corral.len() - 1;
    let mut q: Vec<Vec<T>> = Vec::with_capacity(k);
    let mut r = vec![vec![T::zero(); k]; k];
    let dependent = T::epsilon() * T::lit(1e3);
    for (col, &ci) in corral[1..].iter().enumerate() {
        let mut v: Vec<T> = ys[ci].iter().zip(base).map(|(a, b)| *a - *b).collect();
        let norm0 = dot(&v, &v).sqrt();
        for _ in 0..2 {
            for (row, qj) in q.iter().enumerate() {
                let c = dot(qj, &v);
                r[row][col] = r[row][col] + c;
                for (vk, qk) in v.iter_mut().zip(qj) {
                    *vk = *vk - c * *qk;
                }
            }
        }
        let nrm = dot(&v, &v).sqrt();
        if !(nrm > dependent * norm0) {
            return None;
        }
        r[col][col] = nrm;
        q.push(v.into_iter().map(|c| c / nrm).collect());
    }
    let mut x = base.clone();
    let mut z = vec![T::zero(); k];
    for _ in 0..2 {
        for (j, qj) in q.iter().enumerate() {
            let c = dot(qj, &x);
            z[j] = z[j] + c;
            for (xk, qk) in x.iter_mut().zip(qj) {
                *xk = *xk - c * *qk;
            }
        }
    }
    // R beta = -z by back substitution; alpha = (1 - sum beta, beta).
    let mut beta = vec![T::zero(); k];
    for row in (0..k).rev() {
        let mut acc = -z[row];
        for c in (row + 1)..k {
            acc = acc - r[row][c] * beta[c];
        }
        beta[row] = acc / r[row][row];
    }
    let rest = beta.iter().fold(T::zero(), |a, b| a + *b);
    let mut alpha = Vec::with_capacity(k + 1);
    alpha.push(T::one() - rest);
    alpha.extend(beta);
    Some((alpha, x))
}
