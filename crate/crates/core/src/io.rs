//! Point-stream files, result CSVs and the lower-bound metadata sidecar.
//!
//! A point-stream file is UTF-8 text with one point per line, coordinates
//! separated by whitespace. Lines starting with `#` and blank lines are
//! skipped. The dimension is fixed by the first data line. Values are written
//! with 17 significant digits so `f64` data round-trips exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::multipass::PointSource;
use crate::scalar::Scalar;
use crate::streamgen::{LayerGroup, LowerBoundArtifact};

fn parse_line<T: Scalar>(line: &str, lineno: usize, dim: &mut Option<usize>) -> Result<Option<Point<T>>> {
    let body = line.trim();
    if body.is_empty() || body.starts_with('#') {
        return Ok(None);
    }
    let parse_err = |msg: String| Error::Parse { line: lineno, msg };
    let coords = body
        .split_whitespace()
        .map(|tok| {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(format!("not a number: {tok:?}")))?;
            if !v.is_finite() {
                return Err(parse_err(format!("non-finite value {tok:?}")));
            }
            T::from_f64(v).ok_or_else(|| parse_err(format!("{tok:?} does not fit the scalar type")))
        })
        .collect::<Result<Vec<T>>>()?;
    match *dim {
        None => *dim = Some(coords.len()),
        Some(d) if d != coords.len() => {
            return Err(parse_err(format!("expected {d} coordinates, found {}", coords.len())));
        }
        Some(_) => {}
    }
    Point::new(coords).map(Some)
}

pub fn parse_points<T: Scalar, R: BufRead>(reader: R) -> Result<Vec<Point<T>>> {
    let mut dim = None;
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        if let Some(p) = parse_line(&line?, i + 1, &mut dim)? {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn read_points<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<Point<T>>> {
    parse_points(BufReader::new(File::open(path)?))
}

pub fn write_points_to<T: Scalar, W: Write>(mut w: W, points: &[Point<T>]) -> Result<()> {
    for p in points {
        let mut first = true;
        for c in p.coords() {
            if !first {
                w.write_all(b" ")?;
            }
            first = false;
            write!(w, "{:.16e}", c.to_f64_lossy())?;
        }
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_points<T: Scalar>(path: impl AsRef<Path>, points: &[Point<T>]) -> Result<()> {
    write_points_to(BufWriter::new(File::create(path)?), points)
}

/// File-backed rewindable stream; rewinding seeks to the start.
pub struct FilePointSource {
    path: PathBuf,
    reader: BufReader<File>,
    lineno: usize,
    dim: Option<usize>,
    buf: String,
}

impl FilePointSource {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let reader = BufReader::new(File::open(&path)?);
        Ok(Self {
            path,
            reader,
            lineno: 0,
            dim: None,
            buf: String::new(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Dimension seen so far, if any data line has been read.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }
}

impl<T: Scalar> PointSource<T> for FilePointSource {
    fn rewind(&mut self) -> Result<()> {
        self.reader.seek(SeekFrom::Start(0))?;
        self.lineno = 0;
        Ok(())
    }

    fn next_point(&mut self) -> Result<Option<Point<T>>> {
        loop {
            self.buf.clear();
            if self.reader.read_line(&mut self.buf)? == 0 {
                return Ok(None);
            }
            self.lineno += 1;
            if let Some(p) = parse_line(&self.buf, self.lineno, &mut self.dim)? {
                return Ok(Some(p));
            }
        }
    }
}

/// One experiment or CLI run. Column order is fixed by field order.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ResultRow {
    pub algo: String,
    pub n: usize,
    pub d: usize,
    pub eps: f64,
    pub delta: Option<f64>,
    pub gamma: Option<f64>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub passes: Option<usize>,
    pub stored_final: usize,
    pub stored_peak: usize,
    pub opt_estimate: Option<usize>,
    /// `brute`, `boundary_brute`, `boundary_cycle`, `constructive` or `none`.
    pub opt_method: String,
    pub is_eps_hull: bool,
    pub max_violation: f64,
    pub bad_fraction: Option<f64>,
    pub wall_ms: f64,
    pub mode: String,
}

pub const RESULT_COLUMNS: [&str; 18] = [
    "algo",
    "n",
    "d",
    "eps",
    "delta",
    "gamma",
    "k",
    "seed",
    "passes",
    "stored_final",
    "stored_peak",
    "opt_estimate",
    "opt_method",
    "is_eps_hull",
    "max_violation",
    "bad_fraction",
    "wall_ms",
    "mode",
];

/// Writes rows with a header, replacing the file.
pub fn write_rows(path: impl AsRef<Path>, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends rows, writing the header only if the file is new or empty.
pub fn append_rows(path: impl AsRef<Path>, rows: &[ResultRow]) -> Result<()> {
    let path = path.as_ref();
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Sidecar describing a generated lower-bound stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundMeta {
    pub f: String,
    pub r: usize,
    pub n: usize,
    pub eps_star: f64,
    pub layer_boundaries: Vec<usize>,
    pub layer_margins: Vec<f64>,
    pub radius: f64,
    pub apex_fraction: f64,
    pub safety: f64,
    pub group_map: Vec<LayerGroup>,
}

impl From<&LowerBoundArtifact> for LowerBoundMeta {
    fn from(a: &LowerBoundArtifact) -> Self {
        Self {
            f: a.config.f.to_string(),
            r: a.config.r,
            n: a.stream.len(),
            eps_star: a.eps_star,
            layer_boundaries: a.layer_boundaries.clone(),
            layer_margins: a.layer_margins.clone(),
            radius: a.config.radius,
            apex_fraction: a.config.apex_fraction,
            safety: a.config.safety,
            group_map: a.groups.clone(),
        }
    }
}

/// `<output>.meta.json`
pub fn sidecar_path(output: impl AsRef<Path>) -> PathBuf {
    let mut s = output.as_ref().as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn write_lower_bound_meta(path: impl AsRef<Path>, artifact: &LowerBoundArtifact) -> Result<()> {
    let file = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(file, &LowerBoundMeta::from(artifact))?;
    Ok(())
}

pub fn read_lower_bound_meta(path: impl AsRef<Path>) -> Result<LowerBoundMeta> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}
