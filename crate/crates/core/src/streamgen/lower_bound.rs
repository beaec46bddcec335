//! Layered construction in which every layer is `eps`-meaningful and each
//! new layer sits one `eps` higher, fanned out over groups of the layer below.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geom::{hull_distance_exceeds, Point};
use crate::oracles::planar_margin;
use crate::scalar::Scalar;

pub const DEFAULT_POINT_CAP: usize = 1_000_000;
const GROUP: usize = 5;

/// Growth function `f` of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FTable {
    Const(u64),
    /// `f(x) = a * x`
    Linear(u64),
    Table(BTreeMap<u64, u64>),
}

impl FTable {
    pub fn eval(&self, x: u64) -> Result<u64> {
        let v = match self {
            Self::Const(c) => *c,
            Self::Linear(a) => a.saturating_mul(x),
            Self::Table(t) => *t
                .get(&x)
                .ok_or_else(|| invalid(format!("f-table has no entry for {x}")))?,
        };
        if v == 0 {
            return Err(invalid(format!("f({x}) must be positive")));
        }
        Ok(v)
    }
}

impl FromStr for FTable {
    type Err = Error;

    /// Accepts `const:C`, `linear:A` (also `x` and `2x`), or `table:X=Y,X=Y`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("cannot parse f-table {s:?}"));
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        if s == "x" {
            return Ok(Self::Linear(1));
        }
        if let Some(a) = s.strip_suffix('x') {
            return Ok(Self::Linear(num(a)?));
        }
        let (tag, body) = s.split_once(':').ok_or_else(bad)?;
        match tag {
            "const" => Ok(Self::Const(num(body)?)),
            "linear" => Ok(Self::Linear(num(body)?)),
            "table" => body
                .split(',')
                .map(|kv| {
                    let (k, v) = kv.split_once('=').ok_or_else(bad)?;
                    Ok((num(k)?, num(v)?))
                })
                .collect::<Result<BTreeMap<_, _>>>()
                .map(Self::Table),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Const(c) => write!(f, "const:{c}"),
            Self::Linear(a) => write!(f, "linear:{a}"),
            Self::Table(t) => {
                let body: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "table:{}", body.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundConfig {
    pub f: FTable,
    /// Number of layers above the base square.
    pub r: usize,
    /// Circumradius of the second-layer polygon about `(0.5, 0.5)`.
    pub radius: f64,
    /// Fan apex position between the chord `a2 a4` (0) and `a3` (1).
    pub apex_fraction: f64,
    pub safety: f64,
    pub point_cap: usize,
}

impl LowerBoundConfig {
    pub fn new(f: FTable, r: usize) -> Self {
        Self {
            f,
            r,
            radius: 0.49,
            apex_fraction: 0.5,
            safety: 0.99,
            point_cap: DEFAULT_POINT_CAP,
        }
    }
}

/// Five consecutive points of a layer and the fan built over them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerGroup {
    /// 1-based layer index of the members.
    pub layer: usize,
    /// Stream indices of the members, in counterclockwise order.
    pub members: Vec<usize>,
    /// Half-open stream index range of the fan in the next layer.
    pub fan: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct LowerBoundArtifact {
    pub stream: Vec<Point<f64>>,
    pub eps_star: f64,
    /// Start index of every layer in `stream`.
    pub layer_boundaries: Vec<usize>,
    /// Planar meaningful margin of every layer.
    pub layer_margins: Vec<f64>,
    pub groups: Vec<LayerGroup>,
    pub config: LowerBoundConfig,
}

impl LowerBoundArtifact {
    pub fn layer_count(&self) -> usize {
        self.layer_boundaries.len()
    }

    /// Points of layer `i` (1-based).
    pub fn layer(&self, i: usize) -> &[Point<f64>] {
        let start = self.layer_boundaries[i - 1];
        let end = self
            .layer_boundaries
            .get(i)
            .copied()
            .unwrap_or(self.stream.len());
        &self.stream[start..end]
    }

    /// Layers `1..=i` concatenated.
    pub fn prefix(&self, i: usize) -> &[Point<f64>] {
        let end = self
            .layer_boundaries
            .get(i)
            .copied()
            .unwrap_or(self.stream.len());
        &self.stream[..end]
    }

    /// All layers but the last: an `eps_star`-hull of the whole stream.
    pub fn constructive_witness(&self) -> &[Point<f64>] {
        self.prefix(self.layer_count() - 1)
    }
}

pub fn gen_lower_bound_3d(config: &LowerBoundConfig) -> Result<LowerBoundArtifact> {
    if config.r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    if !(config.radius > 0.0 && config.radius < 0.5) {
        return Err(invalid("polygon radius must lie in (0, 0.5)"));
    }
    if !(config.apex_fraction > 0.0 && config.apex_fraction < 1.0) {
        return Err(invalid("apex fraction must lie in (0, 1)"));
    }
    if !(config.safety > 0.0 && config.safety <= 1.0) {
        return Err(invalid("safety factor must lie in (0, 1]"));
    }
    let cap_error = |size: usize| Error::Capacity {
        what: "lower-bound stream size",
        size,
        limit: config.point_cap,
    };

    let square = vec![
        Point::xy(0.0, 0.0),
        Point::xy(0.0, 1.0),
        Point::xy(1.0, 0.0),
        Point::xy(1.0, 1.0),
    ];
    let mut total = square.len();
    let n2 = 10 * config.f.eval(total as u64)? as usize;
    total += n2;
    if total > config.point_cap {
        return Err(cap_error(total));
    }
    let polygon: Vec<Point<f64>> = (0..n2)
        .map(|j| {
            let a = std::f64::consts::TAU * j as f64 / n2 as f64;
            Point::xy(0.5 + config.radius * a.cos(), 0.5 + config.radius * a.sin())
        })
        .collect();
    let mut layers = vec![square, polygon];
    let mut groups = Vec::new();
    for i in 2..=config.r {
        let m = 10 * config.f.eval(total as u64)? as usize;
        let below = &layers[i - 1];
        let next_len = (below.len() / GROUP)
            .checked_mul(m)
            .ok_or_else(|| cap_error(usize::MAX))?;
        if total.saturating_add(next_len) > config.point_cap {
            return Err(cap_error(total.saturating_add(next_len)));
        }
        let below_start: usize = layers[..i - 1].iter().map(Vec::len).sum();
        let mut next = Vec::with_capacity(next_len);
        for (g, chunk) in below.chunks_exact(GROUP).enumerate() {
            let start = total + next.len();
            next.extend(fan(&chunk[1], &chunk[2], &chunk[3], m, config.apex_fraction));
            groups.push(LayerGroup {
                layer: i,
                members: (0..GROUP).map(|k| below_start + g * GROUP + k).collect(),
                fan: Some((start, total + next.len())),
            });
        }
        total += next.len();
        layers.push(next);
    }
    // Groups of the top layer have no fan above them.
    let top = layers.len();
    if top >= 2 {
        let start: usize = layers[..top - 1].iter().map(Vec::len).sum();
        for g in 0..layers[top - 1].len() / GROUP {
            groups.push(LayerGroup {
                layer: top,
                members: (0..GROUP).map(|k| start + g * GROUP + k).collect(),
                fan: None,
            });
        }
    }

    let layer_margins: Vec<f64> = layers.iter().map(|l| planar_margin(l)).collect();
    let min_margin = layer_margins.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min_margin > 0.0) {
        return Err(Error::Numeric {
            msg: "a layer is not in strictly convex position".into(),
            best_bound: min_margin,
        });
    }
    let eps_star = config.safety * min_margin;

    let mut stream = Vec::with_capacity(total);
    let mut layer_boundaries = Vec::with_capacity(layers.len());
    for (i, layer) in layers.iter().enumerate() {
        layer_boundaries.push(stream.len());
        let z = i as f64 * eps_star;
        stream.extend(layer.iter().map(|p| p.lifted(z)));
    }
    Ok(LowerBoundArtifact {
        stream,
        eps_star,
        layer_boundaries,
        layer_margins,
        groups,
        config: config.clone(),
    })
}

/// `m` points on the circular arc from `a` to `b` whose apex lies at
/// `apex_fraction` of the way from the chord midpoint to `c`, at equal angles.
fn fan(a: &Point<f64>, c: &Point<f64>, b: &Point<f64>, m: usize, apex_fraction: f64) -> Vec<Point<f64>> {
    let (mx, my) = ((a.x() + b.x()) / 2.0, (a.y() + b.y()) / 2.0);
    let half = a.dist(b) / 2.0;
    // Unit normal of the chord, pointing at c.
    let (mut ux, mut uy) = (-(b.y() - a.y()) / (2.0 * half), (b.x() - a.x()) / (2.0 * half));
    let toward_c = (c.x() - mx) * ux + (c.y() - my) * uy;
    if toward_c < 0.0 {
        ux = -ux;
        uy = -uy;
    }
    let s = apex_fraction * toward_c.abs();
    let radius = (half * half + s * s) / (2.0 * s);
    let (ox, oy) = (mx - (radius - s) * ux, my - (radius - s) * uy);
    let ta = (a.y() - oy).atan2(a.x() - ox);
    let sweep = 2.0 * (half / radius).asin();
    // Sweep direction: counterclockwise iff b is counterclockwise of a about the center.
    let cross = (a.x() - ox) * (b.y() - oy) - (a.y() - oy) * (b.x() - ox);
    let sweep = if cross >= 0.0 { sweep } else { -sweep };
    let mut out = Vec::with_capacity(m);
    out.push(a.clone());
    for j in 1..m - 1 {
        let t = ta + sweep * j as f64 / (m - 1) as f64;
        out.push(Point::xy(ox + radius * t.cos(), oy + radius * t.sin()));
    }
    out.push(b.clone());
    out
}

/// Single pass that keeps a point iff it is farther than `eps` from the hull
/// of the points kept so far. Nothing is ever deleted.
pub fn greedy_keeper_run<T: Scalar>(points: &[Point<T>], eps: T) -> Result<Vec<Point<T>>> {
    if eps < T::zero() {
        return Err(invalid("eps must be nonnegative"));
    }
    let bound = eps + T::lit(T::CHECKER_SLACK);
    let tol = T::lit(T::ND_TOL * 0.1);
    let mut kept: Vec<Point<T>> = Vec::new();
    for p in points {
        if kept.is_empty() || hull_distance_exceeds(p, &kept, bound, tol)? {
            kept.push(p.clone());
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ftable_parsing() {
        assert_eq!("const:1".parse::<FTable>().unwrap(), FTable::Const(1));
        assert_eq!("x".parse::<FTable>().unwrap(), FTable::Linear(1));
        assert_eq!("2x".parse::<FTable>().unwrap(), FTable::Linear(2));
        let t: FTable = "table:4=1,14=2".parse().unwrap();
        assert_eq!(t.eval(14).unwrap(), 2);
        assert!(t.eval(5).is_err());
        assert_eq!(t.to_string().parse::<FTable>().unwrap(), t);
        assert!("nope".parse::<FTable>().is_err());
        assert!(FTable::Const(0).eval(1).is_err());
    }

    #[test]
    fn constant_f_sizes() {
        let art = gen_lower_bound_3d(&LowerBoundConfig::new(FTable::Const(1), 2)).unwrap();
        assert_eq!(art.stream.len(), 34);
        assert_eq!(art.layer_boundaries, vec![0, 4, 14]);
        assert_eq!(art.layer(3).len(), 20);
        assert_eq!(art.constructive_witness().len(), 14);
        for (i, m) in art.layer_margins.iter().enumerate() {
            assert!(*m >= art.eps_star, "layer {i}");
            let z = i as f64 * art.eps_star;
            assert!(art.layer(i + 1).iter().all(|p| p.z() == z));
        }
        let with_fans = art.groups.iter().filter(|g| g.fan.is_some()).count();
        assert_eq!(with_fans, 2);
    }

    #[test]
    fn fans_stay_in_their_triangles() {
        let art = gen_lower_bound_3d(&LowerBoundConfig::new(FTable::Const(1), 2)).unwrap();
        for g in art.groups.iter().filter(|g| g.fan.is_some()) {
            let a = |k: usize| art.stream[g.members[k]].truncated(2);
            let (a2, a3, a4) = (a(1), a(2), a(3));
            let (s, e) = g.fan.unwrap();
            for q in &art.stream[s..e] {
                let q = q.truncated(2);
                let tri = crate::geom::convex_hull_2d(&[a2.clone(), a3.clone(), a4.clone()]).unwrap();
                assert!(crate::geom::dist_point_hull_2d(&q, &tri).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let mut cfg = LowerBoundConfig::new(FTable::Linear(1), 3);
        assert!(matches!(gen_lower_bound_3d(&cfg), Err(Error::Capacity { .. })));
        cfg.r = 0;
        assert!(gen_lower_bound_3d(&cfg).is_err());
    }

    #[test]
    fn keeper_on_identical_points() {
        let pts = vec![Point::xyz(1.0, 1.0, 1.0); 6];
        assert_eq!(greedy_keeper_run(&pts, 0.0).unwrap().len(), 1);
    }
}
