use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use epshull::bench::{run_suite, Suite};
use epshull::epsdelta::{DirectionSketch, SketchMode, SketchParams};
use epshull::io::{
    append_rows, read_points, sidecar_path, write_lower_bound_meta, write_points, write_points_to,
    write_rows, FilePointSource, ResultRow,
};
use epshull::multipass::{multipass_run, normalize_diameter};
use epshull::oracles::{eps_delta_bad_fraction, is_eps_hull, opt_boundary_exact, opt_brute_force, BRUTE_FORCE_LIMIT};
use epshull::roa::{RoaState, RoaVariant};
use epshull::streamgen::{
    gen_lower_bound_3d, generate, shuffle_random_order, FTable, LowerBoundConfig, StreamKind, StreamSpec,
};
use epshull::{Error, Point64};

#[derive(Parser)]
#[command(name = "epshull", version, about = "Streaming epsilon-hulls: generate, run, validate, benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point-stream file.
    Gen(GenArgs),
    /// Run an algorithm on a point-stream file.
    Run(RunArgs),
    /// Check that a subset is an eps-hull (and optionally an (eps, delta)-hull).
    Validate(ValidateArgs),
    /// Run an experiment suite and write its result rows.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "circle")]
    Circle,
    #[value(name = "disk")]
    Disk,
    #[value(name = "square_grid")]
    SquareGrid,
    #[value(name = "gaussian")]
    Gaussian,
    #[value(name = "ngon_boundary")]
    NgonBoundary,
    #[value(name = "lower_bound_3d")]
    LowerBound3d,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Circle: random angles instead of equal spacing.
    #[arg(long)]
    random: bool,
    /// Gaussian and polygon dimension.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Polygon corner count.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Lower-bound growth function: const:C, linear:A, x, 2x or table:X=Y,...
    #[arg(long, default_value = "const:1")]
    f: String,
    /// Lower-bound layers above the base square.
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 0.5)]
    apex_fraction: f64,
    #[arg(long, default_value_t = epshull::streamgen::DEFAULT_POINT_CAP)]
    point_cap: usize,
    /// Shuffle the generated stream with this seed.
    #[arg(long)]
    shuffle_seed: Option<u64>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Algo {
    Roa,
    Multipass,
    Epsdelta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Full,
    InsertionOnly,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 0.2)]
    delta: f64,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sketch size formula: practical or theory.
    #[arg(long, default_value = "practical")]
    mode: String,
    #[arg(long, default_value_t = 1.0)]
    constant_c: f64,
    /// Random-order simulation for roa.
    #[arg(long)]
    shuffle_seed: Option<u64>,
    #[arg(long, value_enum, default_value = "full")]
    variant: Variant,
    /// Multipass: scale eps by the stream diameter found in a preliminary scan.
    #[arg(long)]
    normalize: bool,
    /// Monte-Carlo samples for the epsdelta bad-direction fraction.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Compute an optimum estimate (brute force when small, else the planar boundary cycle).
    #[arg(long)]
    opt: bool,
    /// Output subset file.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Result CSV; one row is appended.
    #[arg(long)]
    results: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    subset: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Result CSV; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::Validate(a) => validate(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(points: &[Point64], output: Option<&Path>) -> epshull::Result<()> {
    match output {
        Some(p) => write_points(p, points),
        None => write_points_to(std::io::stdout().lock(), points),
    }
}

fn gen(a: GenArgs) -> epshull::Result<Outcome> {
    let kind = match a.kind {
        Kind::Circle => StreamKind::Circle { radius: a.radius, random: a.random },
        Kind::Disk => StreamKind::Disk { radius: a.radius },
        Kind::SquareGrid => StreamKind::SquareGrid,
        Kind::Gaussian => StreamKind::Gaussian { dim: a.dim },
        Kind::NgonBoundary => StreamKind::NgonBoundary { k: a.k, dim: a.dim },
        Kind::LowerBound3d => {
            let output = a
                .output
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("lower_bound_3d needs --output for its sidecar".into()))?;
            let mut cfg = LowerBoundConfig::new(a.f.parse::<FTable>()?, a.r);
            cfg.apex_fraction = a.apex_fraction;
            cfg.point_cap = a.point_cap;
            let art = gen_lower_bound_3d(&cfg)?;
            write_points(output, &art.stream)?;
            write_lower_bound_meta(sidecar_path(output), &art)?;
            return Ok(Outcome::Pass);
        }
    };
    let mut pts = generate(&StreamSpec::new(kind, a.n, a.seed))?;
    if let Some(s) = a.shuffle_seed {
        pts = shuffle_random_order(&pts, s);
    }
    emit(&pts, a.output.as_deref())?;
    Ok(Outcome::Pass)
}

fn dim_of(points: &[Point64]) -> epshull::Result<usize> {
    points
        .first()
        .map(|p| p.dim())
        .ok_or_else(|| Error::InvalidInput("input stream is empty".into()))
}

fn require_planar(d: usize) -> epshull::Result<()> {
    if d == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: 2, found: d })
    }
}

fn run(a: RunArgs) -> epshull::Result<Outcome> {
    let points: Vec<Point64> = read_points(&a.input)?;
    let d = dim_of(&points)?;
    let mut row = ResultRow {
        algo: format!("{:?}", a.algo).to_lowercase(),
        n: points.len(),
        d,
        eps: a.eps,
        opt_method: "none".into(),
        ..ResultRow::default()
    };
    let start = Instant::now();
    let subset = match a.algo {
        Algo::Roa => {
            require_planar(d)?;
            let variant = match a.variant {
                Variant::Full => RoaVariant::Full,
                Variant::InsertionOnly => RoaVariant::InsertionOnly,
            };
            let order = match a.shuffle_seed {
                Some(s) => shuffle_random_order(&points, s),
                None => points.clone(),
            };
            let mut state = RoaState::with_variant(a.eps, variant)?;
            state.extend(&order)?;
            row.seed = a.shuffle_seed;
            row.stored_peak = state.peak_size();
            row.mode = match (a.variant, a.shuffle_seed) {
                (Variant::Full, Some(_)) => "full;shuffled",
                (Variant::Full, None) => "full;file_order",
                (Variant::InsertionOnly, Some(_)) => "insertion_only;shuffled",
                (Variant::InsertionOnly, None) => "insertion_only;file_order",
            }
            .into();
            state.current()
        }
        Algo::Multipass => {
            require_planar(d)?;
            let mut eps = a.eps;
            row.mode = "raw".into();
            if a.normalize {
                let (_, diam) = normalize_diameter(&points)?;
                eps *= diam;
                row.mode = format!("normalized;diameter={diam:e};prelim_passes=1");
            }
            let mut source = FilePointSource::open(&a.input)?;
            let out = multipass_run(&mut source, eps)?;
            row.passes = Some(out.passes);
            row.stored_peak = out.peak_words;
            out.hull
        }
        Algo::Epsdelta => {
            let mode: SketchMode = a.mode.parse()?;
            let params = SketchParams::new(a.k, a.delta, a.gamma, d)
                .with_seed(a.seed)
                .with_mode(mode)
                .with_constant(a.constant_c);
            let mut sk = DirectionSketch::new(params)?;
            sk.extend(&points)?;
            row.delta = Some(a.delta);
            row.gamma = Some(a.gamma);
            row.k = Some(a.k);
            row.seed = Some(a.seed);
            row.stored_peak = sk.m();
            row.mode = mode.as_str().into();
            sk.output()?
        }
    };
    row.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    row.stored_final = subset.len();
    row.stored_peak = row.stored_peak.max(row.stored_final);

    let report = is_eps_hull(&points, &subset, a.eps)?;
    row.is_eps_hull = report.is_valid;
    row.max_violation = report.max_violation;
    if a.algo == Algo::Epsdelta {
        row.bad_fraction = Some(eps_delta_bad_fraction(&points, &subset, a.eps, a.samples, a.seed ^ 0x5eed)?);
    }
    if a.opt {
        if points.len() <= BRUTE_FORCE_LIMIT {
            row.opt_estimate = Some(opt_brute_force(&points, a.eps, false)?.size);
            row.opt_method = "brute".into();
        } else if d == 2 {
            row.opt_estimate = Some(opt_boundary_exact(&points, a.eps)?.size);
            row.opt_method = "boundary_cycle".into();
        }
    }

    if let Some(out) = &a.output {
        write_points(out, &subset)?;
    }
    if let Some(csv) = &a.results {
        append_rows(csv, std::slice::from_ref(&row))?;
    }
    println!(
        "algo={} n={} d={} eps={} stored_final={} stored_peak={} passes={} is_eps_hull={} max_violation={:e}{}",
        row.algo,
        row.n,
        row.d,
        row.eps,
        row.stored_final,
        row.stored_peak,
        row.passes.map_or("-".to_string(), |p| p.to_string()),
        row.is_eps_hull,
        row.max_violation,
        row.bad_fraction.map_or(String::new(), |b| format!(" bad_fraction={b}")),
    );
    Ok(Outcome::Pass)
}

fn validate(a: ValidateArgs) -> epshull::Result<Outcome> {
    let p: Vec<Point64> = read_points(&a.input)?;
    let s: Vec<Point64> = read_points(&a.subset)?;
    let report = is_eps_hull(&p, &s, a.eps)?;
    println!("is_eps_hull={} max_violation={:e}", report.is_valid, report.max_violation);
    if let Some(w) = &report.witness {
        let coords: Vec<String> = w.coords().iter().map(|c| format!("{c:e}")).collect();
        println!("witness={}", coords.join(" "));
    }
    let mut ok = report.is_valid;
    if let Some(delta) = a.delta {
        let bad = eps_delta_bad_fraction(&p, &s, a.eps, a.samples, a.seed)?;
        let pass = bad <= delta;
        println!("bad_fraction={bad} delta={delta} eps_delta_pass={pass}");
        ok = pass;
    }
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn bench(a: BenchArgs) -> epshull::Result<Outcome> {
    let report = run_suite(a.suite, a.trials, a.seed);
    let rows = report.all_rows();
    match &a.output {
        Some(p) => write_rows(p, &rows)?,
        None => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    for s in &report.summaries {
        eprintln!("{} {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.criterion, s.detail);
    }
    Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
}
