//! Ground-truth checks: epsilon-hull validation, optimal subset size,
//! bad-direction measure and the meaningful margin.

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, invalid, Error, Result};
use crate::geom::{
    common_dim, convex_hull_2d, cross2, dist_hull_xy, dist_point_hull_nd, hull_distance_exceeds, orient_tol,
    sample_unit_sphere, seg_dist_xy, Hull2D, Point,
};
use crate::scalar::{fmax, fmin, Scalar};

/// Largest input accepted by the unrestricted exhaustive search.
pub const BRUTE_FORCE_LIMIT: usize = 18;
/// Largest boundary accepted by the boundary-restricted exhaustive search.
pub const BOUNDARY_BRUTE_LIMIT: usize = 30;
/// Largest boundary accepted by the cubic boundary-cycle solver.
pub const BOUNDARY_EXACT_LIMIT: usize = 1500;
/// Points within this distance of the hull of the others are pruned before
/// Monte-Carlo extent evaluation.
const EXTREME_PRUNE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct EpsHullReport<T> {
    pub is_valid: bool,
    /// `max_{p in P} dist(p, C(S))`; infinite when `S` is empty and `P` is not.
    pub max_violation: T,
    /// Point of `P` attaining `max_violation`.
    pub witness: Option<Point<T>>,
}

/// Checks whether `s` is an `eps`-hull of `p` with the default slack.
pub fn is_eps_hull<T: Scalar>(p: &[Point<T>], s: &[Point<T>], eps: T) -> Result<EpsHullReport<T>> {
    is_eps_hull_with_slack(p, s, eps, T::lit(T::CHECKER_SLACK))
}

pub fn is_eps_hull_with_slack<T: Scalar>(
    p: &[Point<T>],
    s: &[Point<T>],
    eps: T,
    slack: T,
) -> Result<EpsHullReport<T>> {
    if eps < T::zero() {
        return Err(invalid("eps must be nonnegative"));
    }
    let dim = joint_dim(p, s)?;
    let mut report = EpsHullReport {
        is_valid: true,
        max_violation: T::zero(),
        witness: None,
    };
    if p.is_empty() {
        return Ok(report);
    }
    let checker = HullDistance::new(s, dim)?;
    for q in p {
        let d = checker.dist(q)?;
        if report.witness.is_none() || d > report.max_violation {
            report.max_violation = d;
            report.witness = Some(q.clone());
        }
    }
    report.is_valid = report.max_violation <= eps + slack;
    Ok(report)
}

fn joint_dim<T: Scalar>(p: &[Point<T>], s: &[Point<T>]) -> Result<usize> {
    let dp = common_dim(p)?;
    let ds = common_dim(s)?;
    match (dp, ds) {
        (Some(a), Some(b)) => {
            check_dim(a, b)?;
            Ok(a)
        }
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(2),
    }
}

fn nd_tol<T: Scalar>() -> T {
    T::lit(T::ND_TOL * 0.1)
}

/// Distance-to-hull evaluator specialised by dimension.
enum HullDistance<'a, T> {
    Planar(Hull2D<T>),
    General(&'a [Point<T>]),
}

impl<'a, T: Scalar> HullDistance<'a, T> {
    fn new(s: &'a [Point<T>], dim: usize) -> Result<Self> {
        Ok(if dim == 2 {
            Self::Planar(convex_hull_2d(s)?)
        } else {
            Self::General(s)
        })
    }

    fn dist(&self, q: &Point<T>) -> Result<T> {
        match self {
            Self::Planar(h) => Ok(dist_hull_xy(q, h)),
            Self::General(s) if s.is_empty() => Ok(T::infinity()),
            Self::General(s) => dist_point_hull_nd(q, s, nd_tol()),
        }
    }

    fn covers_all(&self, p: &[Point<T>], bound: T) -> Result<bool> {
        for q in p {
            let outside = match self {
                Self::Planar(h) => dist_hull_xy(q, h) > bound,
                Self::General(s) => s.is_empty() || hull_distance_exceeds(q, s, bound, nd_tol())?,
            };
            if outside {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptResult<T> {
    pub size: usize,
    pub subset: Vec<Point<T>>,
    pub restricted_to_boundary: bool,
}

/// Smallest `eps`-hull by exhaustive search in increasing cardinality.
///
/// Candidates are visited by size, then lexicographically by index. With
/// `restrict_to_boundary` only points on the boundary of `C(P)` are used
/// (planar inputs only), indexed in counterclockwise boundary order.
pub fn opt_brute_force<T: Scalar>(
    p: &[Point<T>],
    eps: T,
    restrict_to_boundary: bool,
) -> Result<OptResult<T>> {
    if eps < T::zero() {
        return Err(invalid("eps must be nonnegative"));
    }
    let dim = common_dim(p)?.unwrap_or(2);
    let candidates: Vec<Point<T>> = if restrict_to_boundary {
        check_dim(2, dim)?;
        let b = boundary_points_2d(p)?;
        if b.len() > BOUNDARY_BRUTE_LIMIT {
            return Err(Error::Capacity {
                what: "boundary point count",
                size: b.len(),
                limit: BOUNDARY_BRUTE_LIMIT,
            });
        }
        b
    } else {
        if p.len() > BRUTE_FORCE_LIMIT {
            return Err(Error::Capacity {
                what: "point count",
                size: p.len(),
                limit: BRUTE_FORCE_LIMIT,
            });
        }
        p.to_vec()
    };
    let result = |subset: Vec<Point<T>>| OptResult {
        size: subset.len(),
        subset,
        restricted_to_boundary: restrict_to_boundary,
    };
    if p.is_empty() {
        return Ok(result(Vec::new()));
    }
    let bound = eps + T::lit(T::CHECKER_SLACK);
    for k in 1..=candidates.len() {
        for combo in (0..candidates.len()).combinations(k) {
            let subset: Vec<Point<T>> = combo.iter().map(|&i| candidates[i].clone()).collect();
            if HullDistance::new(&subset, dim)?.covers_all(p, bound)? {
                return Ok(result(subset));
            }
        }
    }
    Err(Error::Numeric {
        msg: "no candidate subset covers the input".into(),
        best_bound: f64::INFINITY,
    })
}

/// Distinct points of `P` on the boundary of `C(P)`, counterclockwise from
/// the hull's first vertex. Points on hull edges are included.
pub fn boundary_points_2d<T: Scalar>(p: &[Point<T>]) -> Result<Vec<Point<T>>> {
    let hull = convex_hull_2d(p)?;
    let v = hull.vertices();
    let mut distinct: Vec<&Point<T>> = Vec::new();
    for q in p {
        if !distinct.iter().any(|d| *d == q) {
            distinct.push(q);
        }
    }
    if v.len() <= 2 {
        // Degenerate hull: every point is on the segment; order along it.
        if v.len() < 2 {
            return Ok(v.to_vec());
        }
        let (a, b) = (&v[0], &v[1]);
        let ex = b.x() - a.x();
        let ey = b.y() - a.y();
        let mut keyed: Vec<(T, &Point<T>)> = distinct
            .into_iter()
            .map(|q| ((q.x() - a.x()) * ex + (q.y() - a.y()) * ey, q))
            .collect();
        keyed.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
        return Ok(keyed.into_iter().map(|(_, q)| q.clone()).collect());
    }
    let n = v.len();
    let mut keyed: Vec<(usize, T, &Point<T>)> = Vec::new();
    for q in distinct {
        for i in 0..n {
            let a = &v[i];
            let b = &v[(i + 1) % n];
            if cross2(a, b, q).abs() > orient_tol(a, b, q) {
                continue;
            }
            let ex = b.x() - a.x();
            let ey = b.y() - a.y();
            let t = ((q.x() - a.x()) * ex + (q.y() - a.y()) * ey) / (ex * ex + ey * ey);
            if t >= T::zero() && t < T::one() {
                keyed.push((i, t, q));
                break;
            }
        }
    }
    keyed.sort_by(|x, y| {
        x.0.cmp(&y.0)
            .then(x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(keyed.into_iter().map(|(_, _, q)| q.clone()).collect())
}

/// Exact boundary-restricted optimum in the plane.
///
/// A subset of the boundary, taken in boundary order, is an `eps`-hull iff
/// every ear between consecutive members has error at most `eps`: points
/// outside `C(S)` lie in exactly one ear, their nearest point of `C(S)` is on
/// that ear's chord, and the farthest ear point is a boundary point. The
/// optimum is therefore a shortest cycle in the "ear error <= eps" graph over
/// the boundary, found here in `O(m^3)`.
pub fn opt_boundary_exact<T: Scalar>(p: &[Point<T>], eps: T) -> Result<OptResult<T>> {
    if eps < T::zero() {
        return Err(invalid("eps must be nonnegative"));
    }
    if let Some(d) = common_dim(p)? {
        check_dim(2, d)?;
    }
    let result = |subset: Vec<Point<T>>| OptResult {
        size: subset.len(),
        subset,
        restricted_to_boundary: true,
    };
    let ccw = boundary_points_2d(p)?;
    let m = ccw.len();
    if m == 0 {
        return Ok(result(Vec::new()));
    }
    if m > BOUNDARY_EXACT_LIMIT {
        return Err(Error::Capacity {
            what: "boundary point count",
            size: m,
            limit: BOUNDARY_EXACT_LIMIT,
        });
    }
    let bound = eps + T::lit(T::CHECKER_SLACK);

    // A single boundary point covers P iff every point is within eps of it.
    for b in &ccw {
        if p.iter().all(|q| q.dist(b) <= bound) {
            return Ok(result(vec![b.clone()]));
        }
    }
    let hull_len = convex_hull_2d(p)?.len();
    if hull_len <= 2 {
        // Collinear input: ears are empty, so check segment coverage directly.
        for i in 0..m {
            for j in (i + 1)..m {
                if p.iter().all(|q| seg_dist_xy(q, &ccw[i], &ccw[j]) <= bound) {
                    return Ok(result(vec![ccw[i].clone(), ccw[j].clone()]));
                }
            }
        }
        unreachable!("the two segment endpoints always cover a collinear set");
    }

    let cw: Vec<Point<T>> = ccw.into_iter().rev().collect();
    // ok[i][j]: the clockwise ear from cw[i] to cw[j] has error <= eps.
    let mut ok = vec![vec![false; m]; m];
    for i in 0..m {
        for step in 1..m {
            let j = (i + step) % m;
            let mut err = T::zero();
            for s in 1..step {
                let k = (i + s) % m;
                err = fmax(err, seg_dist_xy(&cw[k], &cw[i], &cw[j]));
                if err > bound {
                    break;
                }
            }
            ok[i][j] = err <= bound;
        }
    }

    let mut best: Option<Vec<usize>> = None;
    for start in 0..m {
        let limit = best.as_ref().map_or(m + 1, |b| b.len());
        let mut len = vec![usize::MAX; m];
        let mut parent = vec![usize::MAX; m];
        len[0] = 1;
        let mut close: Option<(usize, usize)> = None;
        for r in 1..m {
            let j = (start + r) % m;
            for rp in 0..r {
                let i = (start + rp) % m;
                if len[rp] != usize::MAX && ok[i][j] && len[rp] + 1 < len[r] {
                    len[r] = len[rp] + 1;
                    parent[r] = rp;
                }
            }
            if len[r] != usize::MAX && ok[j][start] && close.is_none_or(|(l, _)| len[r] < l) {
                close = Some((len[r], r));
            }
        }
        if let Some((l, mut r)) = close {
            if l < limit {
                let mut cycle = Vec::with_capacity(l);
                while r != 0 {
                    cycle.push((start + r) % m);
                    r = parent[r];
                }
                cycle.push(start);
                best = Some(cycle);
            }
        }
    }
    let mut idx = best.expect("the full boundary is always a valid cycle");
    idx.sort_unstable();
    Ok(result(idx.into_iter().map(|i| cw[i].clone()).collect()))
}

/// Monte-Carlo estimate of the fraction of unit directions `v` with
/// `w_v(P) - w_v(S) > eps` (plus checker slack).
pub fn eps_delta_bad_fraction<T: Scalar>(
    p: &[Point<T>],
    s: &[Point<T>],
    eps: T,
    num_samples: usize,
    seed: u64,
) -> Result<f64> {
    if s.is_empty() {
        return Err(invalid("bad-direction fraction of an empty subset"));
    }
    if num_samples == 0 {
        return Err(invalid("num_samples must be positive"));
    }
    if eps < T::zero() {
        return Err(invalid("eps must be nonnegative"));
    }
    let dim = joint_dim(p, s)?;
    if p.is_empty() {
        return Ok(0.0);
    }
    let p_ext = extreme_subset(p)?;
    let s_ext = extreme_subset(s)?;
    let bound = eps + T::lit(T::CHECKER_SLACK);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0usize;
    for _ in 0..num_samples {
        let v = sample_unit_sphere::<T, _>(&mut rng, dim);
        let wp = extent_of(&p_ext, v.coords());
        let ws = extent_of(&s_ext, v.coords());
        if wp - ws > bound {
            bad += 1;
        }
    }
    Ok(bad as f64 / num_samples as f64)
}

#[inline]
fn extent_of<T: Scalar>(pts: &[Point<T>], v: &[T]) -> T {
    pts.iter()
        .fold(T::neg_infinity(), |m, p| fmax(m, p.dot(v)))
}

/// Points that can attain a directional maximum: hull vertices in the plane,
/// otherwise the survivors of sequential elimination of hull-interior points.
pub fn extreme_subset<T: Scalar>(p: &[Point<T>]) -> Result<Vec<Point<T>>> {
    let Some(dim) = common_dim(p)? else {
        return Ok(Vec::new());
    };
    if dim == 2 {
        return Ok(convex_hull_2d(p)?.into_vertices());
    }
    let mut kept: Vec<Point<T>> = Vec::new();
    for q in p {
        if !kept.iter().any(|k| k == q) {
            kept.push(q.clone());
        }
    }
    let tol = T::lit(EXTREME_PRUNE_TOL);
    let mut i = 0;
    while i < kept.len() && kept.len() > 1 {
        let others: Vec<Point<T>> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        match dist_point_hull_nd(&kept[i], &others, tol) {
            Ok(d) if d <= tol => {
                kept.remove(i);
            }
            _ => i += 1,
        }
    }
    Ok(kept)
}

/// `min_{p in P} dist(p, C(P \ {p}))`: the largest eps for which `P` is
/// eps-meaningful.
pub fn meaningful_margin<T: Scalar>(p: &[Point<T>]) -> Result<T> {
    if p.len() < 2 {
        return Err(invalid("meaningful margin needs at least two points"));
    }
    let dim = common_dim(p)?.expect("nonempty");
    if dim == 2 {
        return Ok(planar_margin(p));
    }
    let mut best = T::infinity();
    for i in 0..p.len() {
        let others: Vec<Point<T>> = p
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        best = fmin(best, dist_point_hull_nd(&p[i], &others, T::lit(T::ND_TOL * 0.1))?);
    }
    Ok(best)
}

/// Planar margin: zero unless every point is a strict hull vertex, in which
/// case dropping vertex `i` leaves the cycle with `i` cut out.
pub(crate) fn planar_margin<T: Scalar>(p: &[Point<T>]) -> T {
    let hull = convex_hull_2d(p).expect("planar input");
    if hull.len() < p.len() {
        return T::zero();
    }
    let v = hull.vertices();
    let n = v.len();
    let mut best = T::infinity();
    for i in 0..n {
        let rest: Vec<Point<T>> = (1..n).map(|k| v[(i + k) % n].clone()).collect();
        let cut = Hull2D::from_ccw_unchecked(rest);
        best = fmin(best, dist_hull_xy(&v[i], &cut));
    }
    best
}
