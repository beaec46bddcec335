//! Multipass planar epsilon-hull.
//!
//! Keeps a clockwise list of dyadic directions, each with the stream point
//! that maximizes it. Every pass measures the ear error between the witnesses
//! of neighbouring directions, drops directions whose neighbours already
//! cover their ear, and bisects gaps whose ear error exceeds `eps`. The run
//! ends after the first pass that inserts nothing.

mod dyadic;
mod stream;

pub use dyadic::{bisect_clockwise, DyadicAngle, MAX_LEVEL};
pub use stream::{PointSource, SliceSource};

use crate::error::{check_dim, invalid, Result};
use crate::geom::{convex_hull_2d, orient2, seg_dist_xy, Direction, Orientation, Point, StreamingArgMax};
use crate::scalar::{fmax, Scalar};
use stream::traverse;

#[derive(Clone, Debug, PartialEq)]
pub struct DirectionEntry<T> {
    pub angle: DyadicAngle,
    pub t: Direction<T>,
    /// First-arriving maximizer of the stream in direction `t`.
    pub q: Point<T>,
}

/// Bookkeeping for one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassTrace {
    pub pass: usize,
    /// Direction count during the pass.
    pub directions: usize,
    pub deleted: usize,
    pub inserted: usize,
    /// Deepest dyadic level present once the pass has been applied.
    pub max_level: u32,
}

#[derive(Clone, Debug)]
pub struct MultipassOutcome<T> {
    /// Distinct witnesses in clockwise order.
    pub hull: Vec<Point<T>>,
    pub passes: usize,
    /// Peak simultaneous storage, one word per point or direction.
    pub peak_words: usize,
    pub entries: Vec<DirectionEntry<T>>,
    pub trace: Vec<PassTrace>,
    pub stream_len: usize,
}

/// `3 + ceil(log2(1/eps))` for a diameter-1 stream, never below 3.
pub fn pass_bound(eps: f64) -> usize {
    3 + (1.0 / eps).log2().ceil().max(0.0) as usize
}

/// Maximum distance to segment `[q1, q2]` over stream points strictly to the
/// left of `q1 -> q2`, in one pass.
pub fn error_ear<T, S>(source: &mut S, q1: &Point<T>, q2: &Point<T>) -> Result<T>
where
    T: Scalar,
    S: PointSource<T> + ?Sized,
{
    check_dim(2, q1.dim())?;
    check_dim(2, q2.dim())?;
    let mut err = T::zero();
    traverse(source, |p| {
        check_dim(2, p.dim())?;
        err = fmax(err, ear_term(p, q1, q2));
        Ok(())
    })?;
    Ok(err)
}

#[inline]
fn ear_term<T: Scalar>(p: &Point<T>, q1: &Point<T>, q2: &Point<T>) -> T {
    if orient2(q1, p, q2) == Orientation::Clockwise {
        seg_dist_xy(p, q1, q2)
    } else {
        T::zero()
    }
}

/// Ear error between the witnesses of two directions.
///
/// When both directions share a witness the chord is a single point and the
/// left-of test is empty. The ear is then empty only if the witness also
/// maximizes the bisecting direction; otherwise the whole stream is treated
/// as the ear so the gap keeps being refined.
struct EarAccumulator<T> {
    q1: Point<T>,
    q2: Point<T>,
    probe: Option<(Direction<T>, T)>,
    err: T,
    far: T,
    escaped: bool,
}

impl<T: Scalar> EarAccumulator<T> {
    fn new(a: &DirectionEntry<T>, b: &DirectionEntry<T>) -> Result<Self> {
        let probe = if a.q == b.q {
            let t = bisect_clockwise(a.angle, b.angle)?.to_direction::<T>();
            let d = a.q.dot(t.coords());
            Some((t, d))
        } else {
            None
        };
        Ok(Self {
            q1: a.q.clone(),
            q2: b.q.clone(),
            probe,
            err: T::zero(),
            far: T::zero(),
            escaped: false,
        })
    }

    fn offer(&mut self, p: &Point<T>) {
        match &self.probe {
            None => self.err = fmax(self.err, ear_term(p, &self.q1, &self.q2)),
            Some((t, qd)) => {
                let tol = T::lit(T::ORIENT_REL_TOL) * fmax(T::one(), fmax(p.max_abs(), self.q1.max_abs()));
                self.escaped |= p.dot(t.coords()) > *qd + tol;
                self.far = fmax(self.far, p.dist(&self.q1));
            }
        }
    }

    fn value(&self) -> T {
        match self.probe {
            None => self.err,
            Some(_) if self.escaped => self.far,
            Some(_) => T::zero(),
        }
    }
}

/// Runs the multipass algorithm in the stream's own coordinates.
///
/// Pass counts are bounded by `3 + ceil(log2(diam/eps))`; normalize with
/// [`normalize_diameter`] to compare against [`pass_bound`].
pub fn multipass_run<T, S>(source: &mut S, eps: T) -> Result<MultipassOutcome<T>>
where
    T: Scalar,
    S: PointSource<T> + ?Sized,
{
    if !(eps > T::zero()) || !eps.is_finite() {
        return Err(invalid(format!("eps must be positive and finite, got {eps}")));
    }
    let bound = eps + T::lit(T::CHECKER_SLACK);

    let seeds = [DyadicAngle::ZERO, DyadicAngle::PI];
    let mut maxers: Vec<StreamingArgMax<T>> =
        seeds.iter().map(|a| StreamingArgMax::new(a.to_direction())).collect();
    let stream_len = traverse(source, |p| {
        check_dim(2, p.dim())?;
        for m in &mut maxers {
            m.offer(p);
        }
        Ok(())
    })?;
    if stream_len == 0 {
        return Err(invalid("multipass needs a nonempty stream"));
    }
    let mut entries: Vec<DirectionEntry<T>> = seeds
        .iter()
        .zip(maxers)
        .map(|(a, m)| DirectionEntry {
            angle: *a,
            t: m.direction().clone(),
            q: m.into_best().expect("nonempty stream"),
        })
        .collect();
    let mut passes = 1;
    let mut peak_words = 0;
    let mut trace = vec![PassTrace {
        pass: 1,
        directions: 2,
        deleted: 0,
        inserted: 0,
        max_level: 1,
    }];

    loop {
        let k = entries.len();
        // t_i, q_i, t'_i, q'_i for every i, plus the point being read.
        peak_words = peak_words.max(4 * k + 1);
        let next = |i: usize| (i + 1) % k;
        let prev = |i: usize| (i + k - 1) % k;

        let mut adj = (0..k)
            .map(|i| EarAccumulator::new(&entries[i], &entries[next(i)]))
            .collect::<Result<Vec<_>>>()?;
        let mut skip = if k > 2 {
            (0..k)
                .map(|i| EarAccumulator::new(&entries[prev(i)], &entries[next(i)]))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let mids = (0..k)
            .map(|i| bisect_clockwise(entries[i].angle, entries[next(i)].angle))
            .collect::<Result<Vec<_>>>()?;
        let mut mid_max: Vec<StreamingArgMax<T>> =
            mids.iter().map(|a| StreamingArgMax::new(a.to_direction())).collect();

        traverse(source, |p| {
            check_dim(2, p.dim())?;
            for a in adj.iter_mut().chain(skip.iter_mut()) {
                a.offer(p);
            }
            for m in &mut mid_max {
                m.offer(p);
            }
            Ok(())
        })?;
        passes += 1;

        let mut deleted = vec![false; k];
        if k > 2 {
            for i in 0..k {
                if skip[i].value() <= bound && !deleted[prev(i)] && !deleted[next(i)] {
                    deleted[i] = true;
                }
            }
        }
        let mut rebuilt = Vec::with_capacity(2 * k);
        let mut inserted = 0;
        for (i, m) in mid_max.into_iter().enumerate() {
            if deleted[i] {
                continue;
            }
            let t = m.direction().clone();
            let witness = m.into_best();
            rebuilt.push(entries[i].clone());
            if !deleted[next(i)] && adj[i].value() > bound {
                rebuilt.push(DirectionEntry {
                    angle: mids[i],
                    t,
                    q: witness.expect("nonempty stream"),
                });
                inserted += 1;
            }
        }
        entries = rebuilt;
        trace.push(PassTrace {
            pass: passes,
            directions: k,
            deleted: deleted.iter().filter(|&&d| d).count(),
            inserted,
            max_level: entries.iter().map(|e| e.angle.level()).max().unwrap_or(0),
        });
        if inserted == 0 {
            break;
        }
    }

    let mut hull: Vec<Point<T>> = Vec::with_capacity(entries.len());
    for e in &entries {
        if !hull.contains(&e.q) {
            hull.push(e.q.clone());
        }
    }
    Ok(MultipassOutcome {
        hull,
        passes,
        peak_words,
        entries,
        trace,
        stream_len,
    })
}

/// Convenience wrapper over an in-memory stream.
pub fn multipass_points<T: Scalar>(points: &[Point<T>], eps: T) -> Result<MultipassOutcome<T>> {
    multipass_run(&mut SliceSource::new(points), eps)
}

/// Scales a planar set to diameter 1 (unchanged if the diameter is 0) and
/// returns the applied divisor, the original diameter.
pub fn normalize_diameter<T: Scalar>(points: &[Point<T>]) -> Result<(Vec<Point<T>>, T)> {
    let hull = convex_hull_2d(points)?;
    let v = hull.vertices();
    let mut diam = T::zero();
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            diam = fmax(diam, v[i].dist(&v[j]));
        }
    }
    if diam == T::zero() {
        return Ok((points.to_vec(), T::one()));
    }
    let scaled = points
        .iter()
        .map(|p| Point::xy(p.x() / diam, p.y() / diam))
        .collect();
    Ok((scaled, diam))
}
