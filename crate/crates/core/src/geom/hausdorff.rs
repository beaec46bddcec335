use crate::error::{invalid, Result};
use crate::scalar::{fmax, Scalar};

use super::distance::dist_boundary_xy;
use super::hull::Hull2D;
use super::Point;

/// Two-way Hausdorff distance between the boundaries of two convex polygons.
pub fn hausdorff_boundary_2d<T: Scalar>(a: &Hull2D<T>, b: &Hull2D<T>) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Err(invalid("Hausdorff distance needs nonempty hulls"));
    }
    Ok(fmax(directed(a, b), directed(b, a)))
}

/// `max_{x in bd A} dist(x, bd B)`.
///
/// Along a source edge the distance to `bd B` is convex where the edge runs
/// outside `B`, so those stretches peak at edge endpoints. Inside `B` it is the
/// lower envelope of the distances to B's supporting lines, a concave
/// piecewise-linear function whose maximum sits at a clip point or a crossing
/// of two envelope lines.
fn directed<T: Scalar>(a: &Hull2D<T>, b: &Hull2D<T>) -> T {
    let mut best = a
        .vertices()
        .iter()
        .fold(T::zero(), |m, v| fmax(m, dist_boundary_xy(v, b)));
    if b.len() < 3 {
        return best;
    }
    let lines: Vec<(T, T, T)> = b
        .edges()
        .map(|(u, w)| {
            // Signed distance to line uw, positive on the interior side: c0 + nx*x + ny*y.
            let ex = w.x() - u.x();
            let ey = w.y() - u.y();
            let len = (ex * ex + ey * ey).sqrt();
            let nx = -ey / len;
            let ny = ex / len;
            (-(nx * u.x() + ny * u.y()), nx, ny)
        })
        .collect();

    for (u, w) in a.edges() {
        let dx = w.x() - u.x();
        let dy = w.y() - u.y();
        // Clip u + t (w - u), t in [0, 1], against every interior half-plane of B.
        let mut t0 = T::zero();
        let mut t1 = T::one();
        let mut empty = false;
        let affine: Vec<(T, T)> = lines
            .iter()
            .map(|&(c0, nx, ny)| (c0 + nx * u.x() + ny * u.y(), nx * dx + ny * dy))
            .collect();
        for &(c, s) in &affine {
            if s == T::zero() {
                if c < T::zero() {
                    empty = true;
                    break;
                }
            } else {
                let t = -c / s;
                if s > T::zero() {
                    t0 = fmax(t0, t);
                } else if t < t1 {
                    t1 = t;
                }
            }
        }
        if empty || t0 > t1 {
            continue;
        }
        let at = |t: T| Point::xy(u.x() + t * dx, u.y() + t * dy);
        let mut consider = |t: T| {
            best = fmax(best, dist_boundary_xy(&at(t), b));
        };
        consider(t0);
        consider(t1);
        for j in 0..affine.len() {
            for k in (j + 1)..affine.len() {
                let (cj, sj) = affine[j];
                let (ck, sk) = affine[k];
                let ds = sj - sk;
                if ds != T::zero() {
                    let t = (ck - cj) / ds;
                    if t > t0 && t < t1 {
                        consider(t);
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull_2d;

    fn sq(s: f64) -> Hull2D<f64> {
        convex_hull_2d(&[
            Point::xy(0.0, 0.0),
            Point::xy(s, 0.0),
            Point::xy(s, s),
            Point::xy(0.0, s),
        ])
        .unwrap()
    }

    #[test]
    fn identical_hulls() {
        assert_eq!(hausdorff_boundary_2d(&sq(1.0), &sq(1.0)).unwrap(), 0.0);
    }

    #[test]
    fn interior_edge_maximum_is_found() {
        // A diamond inscribed in the square touches it at its vertices, but the
        // midpoints of its edges sit 0.25 from the square boundary.
        let diamond = convex_hull_2d(&[
            Point::xy(0.5, 0.0),
            Point::xy(1.0, 0.5),
            Point::xy(0.5, 1.0),
            Point::xy(0.0, 0.5),
        ])
        .unwrap();
        let h = directed(&diamond, &sq(1.0));
        assert!((h - 0.25).abs() < 1e-12, "{h}");
    }

    #[test]
    fn empty_is_error() {
        assert!(hausdorff_boundary_2d(&sq(1.0), &Hull2D::empty()).is_err());
    }
}
