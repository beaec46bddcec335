//! Reproducible point streams.
//!
//! Benign distributions (circle, disk, grid, Gaussian, polygon boundary),
//! seeded random-order shuffling, and the layered three-dimensional
//! construction that defeats every always-competitive streaming algorithm.

mod lower_bound;

pub use lower_bound::{
    gen_lower_bound_3d, greedy_keeper_run, FTable, LayerGroup, LowerBoundArtifact, LowerBoundConfig,
    DEFAULT_POINT_CAP,
};

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::geom::Point;

#[derive(Clone, Debug, PartialEq)]
pub enum StreamKind {
    /// Points on a circle about the origin, equally spaced or uniformly random.
    Circle { radius: f64, random: bool },
    /// Uniform in the disk about the origin.
    Disk { radius: f64 },
    /// `floor(sqrt(n))^2` lattice points in the unit square, row-major.
    SquareGrid,
    /// Standard normal in `dim` dimensions.
    Gaussian { dim: usize },
    /// The `k` corners of a regular unit-circumradius polygon plus `n - k`
    /// uniform points on its perimeter, shuffled. `dim = 3` embeds at `z = 0`.
    NgonBoundary { k: usize, dim: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StreamSpec {
    pub kind: StreamKind,
    pub n: usize,
    pub seed: u64,
}

impl StreamSpec {
    pub fn new(kind: StreamKind, n: usize, seed: u64) -> Self {
        Self { kind, n, seed }
    }
}

pub fn generate(spec: &StreamSpec) -> Result<Vec<Point<f64>>> {
    let n = spec.n;
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let on_circle = |r: f64, a: f64| Point::xy(r * a.cos(), r * a.sin());
    let positive = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(invalid(format!("{name} must be positive, got {v}")))
        }
    };
    Ok(match spec.kind {
        StreamKind::Circle { radius, random } => {
            positive("radius", radius)?;
            (0..n)
                .map(|i| {
                    let a = if random {
                        rng.random::<f64>() * TAU
                    } else {
                        TAU * i as f64 / n as f64
                    };
                    on_circle(radius, a)
                })
                .collect()
        }
        StreamKind::Disk { radius } => {
            positive("radius", radius)?;
            (0..n)
                .map(|_| {
                    let r = radius * rng.random::<f64>().sqrt();
                    on_circle(r, rng.random::<f64>() * TAU)
                })
                .collect()
        }
        StreamKind::SquareGrid => {
            let k = n.isqrt();
            let step = |i: usize| if k == 1 { 0.0 } else { i as f64 / (k - 1) as f64 };
            (0..k)
                .flat_map(|i| (0..k).map(move |j| Point::xy(step(i), step(j))))
                .collect()
        }
        StreamKind::Gaussian { dim } => {
            if dim == 0 {
                return Err(invalid("dim must be at least 1"));
            }
            (0..n)
                .map(|_| {
                    let c: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
                    Point::new(c).expect("nonempty")
                })
                .collect()
        }
        StreamKind::NgonBoundary { k, dim } => {
            if k < 3 {
                return Err(invalid("polygon needs at least 3 corners"));
            }
            if n < k {
                return Err(invalid(format!("n = {n} is smaller than the corner count {k}")));
            }
            if dim != 2 && dim != 3 {
                return Err(invalid("polygon streams are planar or embedded at z = 0"));
            }
            let corner = |j: usize| on_circle(1.0, TAU * (j % k) as f64 / k as f64);
            let mut pts: Vec<Point<f64>> = (0..k).map(corner).collect();
            for _ in k..n {
                let e = rng.random_range(0..k);
                let t: f64 = rng.random();
                let (a, b) = (corner(e), corner(e + 1));
                pts.push(Point::xy(a.x() + t * (b.x() - a.x()), a.y() + t * (b.y() - a.y())));
            }
            pts.shuffle(&mut rng);
            if dim == 3 {
                pts = pts.iter().map(|p| p.lifted(0.0)).collect();
            }
            pts
        }
    })
}

/// Uniformly random permutation (Fisher-Yates) determined by `seed`.
pub fn shuffle_random_order<T: Clone>(points: &[T], seed: u64) -> Vec<T> {
    let mut out = points.to_vec();
    out.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    out
}
