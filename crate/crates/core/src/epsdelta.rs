//! One-pass `(eps, delta)`-hull sketch in any dimension.
//!
//! Draws `m` uniform directions up front and keeps, per direction, the first
//! stream point attaining the maximum dot product. The distinct survivors
//! match the extent of the whole stream in all but a `delta` fraction of
//! directions, with probability at least `1 - gamma`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Error, Result};
use crate::geom::{sample_unit_sphere, Direction, Point, StreamingArgMax};
use crate::scalar::Scalar;

/// Upper limit on the number of sketch directions.
pub const MAX_SLOTS: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SketchMode {
    /// `c * d^(2d+2) * (k/delta^2) * ln(k d / (gamma delta))` directions.
    Theory,
    /// The same count without the `d^(2d+2)` factor.
    #[default]
    Practical,
}

impl SketchMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Theory => "theory",
            Self::Practical => "practical",
        }
    }
}

impl std::str::FromStr for SketchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theory" => Ok(Self::Theory),
            "practical" => Ok(Self::Practical),
            _ => Err(invalid(format!("unknown sketch mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SketchParams {
    /// Assumed bound on the optimal eps-hull size.
    pub k: usize,
    pub delta: f64,
    pub gamma: f64,
    pub dim: usize,
    pub constant_c: f64,
    pub seed: u64,
    pub mode: SketchMode,
}

impl SketchParams {
    pub fn new(k: usize, delta: f64, gamma: f64, dim: usize) -> Self {
        Self {
            k,
            delta,
            gamma,
            dim,
            constant_c: 1.0,
            seed: 0,
            mode: SketchMode::Practical,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: SketchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.constant_c = c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if self.k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        if !open_unit(self.delta) {
            return Err(invalid(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if !open_unit(self.gamma) {
            return Err(invalid(format!("gamma must lie in (0, 1), got {}", self.gamma)));
        }
        if self.dim == 0 {
            return Err(invalid("dim must be at least 1"));
        }
        if !(self.constant_c > 0.0) || !self.constant_c.is_finite() {
            return Err(invalid(format!("constant_c must be positive, got {}", self.constant_c)));
        }
        Ok(())
    }
}

/// Number of sketch directions for `params`, always at least 1.
pub fn required_m(params: &SketchParams) -> Result<usize> {
    params.validate()?;
    let k = params.k as f64;
    let d = params.dim as f64;
    let (delta, gamma) = (params.delta, params.gamma);
    let dim_factor = match params.mode {
        SketchMode::Theory => d.powf(2.0 * d + 2.0),
        SketchMode::Practical => 1.0,
    };
    // For tiny k*d the log can go nonpositive; the count is still at least 1.
    let raw = params.constant_c * dim_factor * (k / (delta * delta)) * (k * d / (gamma * delta)).ln();
    let m = raw.ceil().max(1.0);
    if !m.is_finite() || m > MAX_SLOTS as f64 {
        return Err(Error::Capacity {
            what: "sketch directions",
            size: if m.is_finite() { m as usize } else { usize::MAX },
            limit: MAX_SLOTS,
        });
    }
    Ok(m as usize)
}

#[derive(Clone, Debug)]
pub struct DirectionSketch<T> {
    params: SketchParams,
    slots: Vec<StreamingArgMax<T>>,
    n_seen: usize,
}

impl<T: Scalar> DirectionSketch<T> {
    pub fn new(params: SketchParams) -> Result<Self> {
        let m = required_m(&params)?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let slots = (0..m)
            .map(|_| StreamingArgMax::new(sample_unit_sphere(&mut rng, params.dim)))
            .collect();
        Ok(Self {
            params,
            slots,
            n_seen: 0,
        })
    }

    pub fn update(&mut self, p: &Point<T>) -> Result<()> {
        check_dim(self.params.dim, p.dim())?;
        for s in &mut self.slots {
            s.offer(p);
        }
        self.n_seen += 1;
        Ok(())
    }

    pub fn extend<'a, I>(&mut self, points: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Point<T>>,
    {
        for p in points {
            self.update(p)?;
        }
        Ok(())
    }

    /// Distinct slot witnesses, in slot order of first appearance.
    pub fn output(&self) -> Result<Vec<Point<T>>> {
        if self.n_seen == 0 {
            return Err(invalid("sketch has not seen any points"));
        }
        let mut out: Vec<Point<T>> = Vec::new();
        for s in &self.slots {
            let b = s.best().expect("every slot is filled by the first point");
            if !out.contains(b) {
                out.push(b.clone());
            }
        }
        Ok(out)
    }

    pub fn m(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[StreamingArgMax<T>] {
        &self.slots
    }

    pub fn directions(&self) -> impl Iterator<Item = &Direction<T>> {
        self.slots.iter().map(|s| s.direction())
    }

    pub fn params(&self) -> &SketchParams {
        &self.params
    }

    pub fn n_seen(&self) -> usize {
        self.n_seen
    }
}
