//! Experiment suites: each trial produces one [`ResultRow`]; each suite ends
//! with summary rows carrying an aggregate pass/fail.

use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::epsdelta::{DirectionSketch, SketchMode, SketchParams};
use crate::error::{invalid, Error, Result};
use crate::geom::Point;
use crate::io::ResultRow;
use crate::multipass::{multipass_points, normalize_diameter, pass_bound};
use crate::oracles::{eps_delta_bad_fraction, is_eps_hull, opt_boundary_exact, opt_brute_force};
use crate::roa::RoaState;
use crate::streamgen::{
    gen_lower_bound_3d, generate, greedy_keeper_run, FTable, LowerBoundConfig,
    StreamKind, StreamSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    RoaGrowth,
    MultipassBounds,
    EpsdeltaGuarantee,
    LowerBoundDemo,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::RoaGrowth,
        Suite::MultipassBounds,
        Suite::EpsdeltaGuarantee,
        Suite::LowerBoundDemo,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::RoaGrowth => "roa_growth",
            Self::MultipassBounds => "multipass_bounds",
            Self::EpsdeltaGuarantee => "epsdelta_guarantee",
            Self::LowerBoundDemo => "lower_bound_demo",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub criterion: String,
    pub passed: bool,
    pub detail: String,
}

impl Summary {
    fn new(criterion: &str, passed: bool, detail: String) -> Self {
        Self {
            criterion: criterion.into(),
            passed,
            detail,
        }
    }

    pub fn to_row(&self) -> ResultRow {
        ResultRow {
            algo: "summary".into(),
            opt_method: "none".into(),
            is_eps_hull: self.passed,
            mode: format!("{}: {}", self.criterion, self.detail),
            ..ResultRow::default()
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<ResultRow>,
    pub summaries: Vec<Summary>,
}

impl BenchReport {
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.passed)
    }

    /// Trial rows followed by summary rows.
    pub fn all_rows(&self) -> Vec<ResultRow> {
        let mut out = self.rows.clone();
        out.extend(self.summaries.iter().map(Summary::to_row));
        out
    }
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> BenchReport {
    match suite {
        Suite::RoaGrowth => roa_growth(trials, seed),
        Suite::MultipassBounds => multipass_bounds(trials, seed),
        Suite::EpsdeltaGuarantee => epsdelta_guarantee(trials, seed),
        Suite::LowerBoundDemo => lower_bound_demo(),
    }
}

fn failed_row(algo: &str, seed: u64, err: &Error) -> ResultRow {
    ResultRow {
        algo: algo.into(),
        seed: Some(seed),
        opt_method: "none".into(),
        max_violation: f64::INFINITY,
        mode: format!("error: {err}"),
        ..ResultRow::default()
    }
}

fn run_trials<F>(algo: &str, trials: usize, seed: u64, trial: F) -> Vec<ResultRow>
where
    F: Fn(u64) -> Result<ResultRow> + Sync,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let s = seed.wrapping_add(t);
            trial(s).unwrap_or_else(|e| failed_row(algo, s, &e))
        })
        .collect()
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn count(rows: &[ResultRow], pred: impl Fn(&ResultRow) -> bool) -> usize {
    rows.iter().filter(|r| pred(r)).count()
}

const ROA_N: usize = 1000;
const ROA_EPS: f64 = 0.05;
const ROA_SPACE_FACTOR: f64 = 10.0;

fn roa_growth(trials: usize, seed: u64) -> BenchReport {
    let rows = run_trials("roa", trials, seed, |s| {
        let pts = generate(&StreamSpec::new(StreamKind::Disk { radius: 1.0 }, ROA_N, s))?;
        let start = Instant::now();
        let mut state = RoaState::new(ROA_EPS)?;
        state.extend(&pts)?;
        let wall_ms = ms(start);
        let report = is_eps_hull(&pts, state.points(), ROA_EPS)?;
        let opt = opt_boundary_exact(&pts, ROA_EPS)?;
        Ok(ResultRow {
            algo: "roa".into(),
            n: pts.len(),
            d: 2,
            eps: ROA_EPS,
            seed: Some(s),
            stored_final: state.len(),
            stored_peak: state.peak_size(),
            opt_estimate: Some(opt.size),
            opt_method: "boundary_cycle".into(),
            is_eps_hull: report.is_valid,
            max_violation: report.max_violation,
            wall_ms,
            mode: "random_order".into(),
            ..ResultRow::default()
        })
    });
    let log_n = (ROA_N as f64).log2();
    let within = count(&rows, |r| {
        r.opt_estimate
            .is_some_and(|o| r.stored_peak as f64 <= ROA_SPACE_FACTOR * o as f64 * log_n)
    });
    let valid = count(&rows, |r| r.is_eps_hull);
    let n = rows.len().max(1);
    let summaries = vec![
        Summary::new("roa_valid", valid == rows.len(), format!("{valid}/{} eps-hulls", rows.len())),
        Summary::new(
            "roa_space",
            within as f64 >= 0.95 * n as f64,
            format!("{within}/{n} trials with peak <= 10*OPT*log2(n)"),
        ),
    ];
    BenchReport { rows, summaries }
}

const MULTIPASS_N: usize = 12;
const MULTIPASS_EPS: [f64; 4] = [1.0, 0.5, 0.1, 0.01];

fn multipass_bounds(trials: usize, seed: u64) -> BenchReport {
    let rows = run_trials("multipass", trials, seed, |s| {
        let eps = MULTIPASS_EPS[(s % 4) as usize];
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let raw: Vec<Point<f64>> = (0..MULTIPASS_N)
            .map(|_| Point::xy(rng.random(), rng.random()))
            .collect();
        let (pts, _) = normalize_diameter(&raw)?;
        let start = Instant::now();
        let out = multipass_points(&pts, eps)?;
        let wall_ms = ms(start);
        let report = is_eps_hull(&pts, &out.hull, eps)?;
        let opt = opt_brute_force(&pts, eps, false)?;
        Ok(ResultRow {
            algo: "multipass".into(),
            n: pts.len(),
            d: 2,
            eps,
            seed: Some(s),
            passes: Some(out.passes),
            stored_final: out.hull.len(),
            stored_peak: out.peak_words,
            opt_estimate: Some(opt.size),
            opt_method: "brute".into(),
            is_eps_hull: report.is_valid,
            max_violation: report.max_violation,
            wall_ms,
            mode: "normalized".into(),
            ..ResultRow::default()
        })
    });
    let passes_ok = count(&rows, |r| r.passes.is_some_and(|p| p <= pass_bound(r.eps)));
    let ceiling_ok = count(&rows, |r| r.passes.is_some_and(|p| p <= pass_bound(r.eps) + 1));
    let card_ok = count(&rows, |r| r.opt_estimate.is_some_and(|o| r.stored_final <= 6 * o));
    let words_ok = count(&rows, |r| r.opt_estimate.is_some_and(|o| r.stored_peak <= 24 * o + 16));
    let valid = count(&rows, |r| r.is_eps_hull);
    let n = rows.len();
    let summaries = vec![
        Summary::new("multipass_valid", valid == n, format!("{valid}/{n} eps-hulls")),
        Summary::new(
            "multipass_passes",
            passes_ok == n,
            format!("{passes_ok}/{n} within 3+ceil(log2(1/eps)); {ceiling_ok}/{n} within one more"),
        ),
        Summary::new("multipass_cardinality", card_ok == n, format!("{card_ok}/{n} with |S| <= 6*OPT")),
        Summary::new("multipass_words", words_ok == n, format!("{words_ok}/{n} with words <= 24*OPT+16")),
    ];
    BenchReport { rows, summaries }
}

const SKETCH_N: usize = 500;
const SKETCH_DELTA: f64 = 0.2;
const SKETCH_GAMMA: f64 = 0.2;
const SKETCH_SAMPLES: usize = 100_000;

fn epsdelta_guarantee(trials: usize, seed: u64) -> BenchReport {
    let rows = run_trials("epsdelta", trials, seed, |s| {
        let (dim, k) = [(2, 4), (2, 6), (3, 4), (3, 6)][(s % 4) as usize];
        let pts = generate(&StreamSpec::new(StreamKind::NgonBoundary { k, dim }, SKETCH_N, s))?;
        let params = SketchParams::new(k, SKETCH_DELTA, SKETCH_GAMMA, dim)
            .with_seed(s)
            .with_mode(SketchMode::Practical);
        let start = Instant::now();
        let mut sk = DirectionSketch::new(params)?;
        sk.extend(&pts)?;
        let out = sk.output()?;
        let wall_ms = ms(start);
        let report = is_eps_hull(&pts, &out, 0.0)?;
        let bad = eps_delta_bad_fraction(&pts, &out, 0.0, SKETCH_SAMPLES, s ^ 0x5eed)?;
        Ok(ResultRow {
            algo: "epsdelta".into(),
            n: pts.len(),
            d: dim,
            eps: 0.0,
            delta: Some(SKETCH_DELTA),
            gamma: Some(SKETCH_GAMMA),
            k: Some(k),
            seed: Some(s),
            stored_final: out.len(),
            stored_peak: sk.m(),
            opt_estimate: Some(k),
            opt_method: "constructive".into(),
            is_eps_hull: report.is_valid,
            max_violation: report.max_violation,
            bad_fraction: Some(bad),
            wall_ms,
            mode: SketchMode::Practical.as_str().into(),
            ..ResultRow::default()
        })
    });
    let n = rows.len() as f64;
    let good = count(&rows, |r| r.bad_fraction.is_some_and(|b| b <= SKETCH_DELTA));
    let g = SKETCH_GAMMA;
    let need = ((1.0 - g) * n - 3.0 * (g * (1.0 - g) * n).sqrt()).max(0.0).ceil() as usize;
    let summaries = vec![Summary::new(
        "epsdelta_guarantee",
        good >= need,
        format!("{good}/{} trials with bad fraction <= delta, need {need}", rows.len()),
    )];
    BenchReport { rows, summaries }
}

/// Runs the greedy keeper on one lower-bound configuration.
pub fn lower_bound_row(f: FTable, r: usize) -> Result<ResultRow> {
    let mode = format!("f={f};r={r}");
    let art = gen_lower_bound_3d(&LowerBoundConfig::new(f, r))?;
    let eps = art.eps_star;
    let start = Instant::now();
    let kept = greedy_keeper_run(&art.stream, eps)?;
    let wall_ms = ms(start);
    let witness = art.constructive_witness();
    let report = is_eps_hull(&art.stream, witness, eps)?;
    Ok(ResultRow {
        algo: "greedy_keeper".into(),
        n: art.stream.len(),
        d: 3,
        eps,
        stored_final: kept.len(),
        stored_peak: kept.len(),
        opt_estimate: Some(witness.len()),
        opt_method: "constructive".into(),
        is_eps_hull: report.is_valid,
        max_violation: report.max_violation,
        wall_ms,
        mode,
        ..ResultRow::default()
    })
}

fn lower_bound_demo() -> BenchReport {
    let configs = [
        (FTable::Const(1), 1),
        (FTable::Const(1), 2),
        (FTable::Linear(1), 1),
        (FTable::Linear(1), 2),
    ];
    let rows: Vec<ResultRow> = configs
        .par_iter()
        .map(|(f, r)| {
            lower_bound_row(f.clone(), *r)
                .unwrap_or_else(|e| failed_row("greedy_keeper", 0, &e))
        })
        .collect();
    let ratio = |r: &ResultRow| r.stored_final as f64 / r.opt_estimate.unwrap_or(0).max(1) as f64;
    let ratios: Vec<f64> = rows.iter().map(ratio).collect();
    let linear_increases = ratios[3] > ratios[2] && ratios[3] > ratios[1];
    let witnesses_valid = rows.iter().all(|r| r.is_eps_hull);
    let summaries = vec![
        Summary::new(
            "lower_bound_witness",
            witnesses_valid,
            "constructive witnesses are eps_star-hulls".into(),
        ),
        Summary::new(
            "lower_bound_blowup",
            ratios[1] >= 1.4,
            format!("f=const:1 r=2 retention/OPT = {:.3}", ratios[1]),
        ),
        Summary::new(
            "lower_bound_growth",
            linear_increases,
            format!("retention/OPT ratios {:?}", ratios.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>()),
        ),
    ];
    BenchReport { rows, summaries }
}
