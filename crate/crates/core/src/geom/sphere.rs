use rand::Rng;
use rand_distr::StandardNormal;

use crate::scalar::Scalar;

use super::point::Coords;
use super::Direction;

/// Gaussian draws with norm below this are rejected and redrawn.
pub const MIN_GAUSSIAN_NORM: f64 = 1e-8;

/// Uniform direction on `S^{d-1}` from a normalized Gaussian vector.
pub fn sample_unit_sphere<T: Scalar, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Direction<T> {
    assert!(dim >= 1, "sphere dimension must be positive");
    loop {
        let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = g.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n < MIN_GAUSSIAN_NORM {
            continue;
        }
        let coords: Coords<T> = g.iter().map(|c| T::lit(c / n)).collect();
        return Direction::normalized(coords).expect("nonzero by construction");
    }
}
