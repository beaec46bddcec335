//! Rewindable point streams.

use crate::error::Result;
use crate::geom::Point;

/// A stream that can be traversed repeatedly, in the same order each time.
pub trait PointSource<T> {
    /// Restarts the stream at its first point.
    fn rewind(&mut self) -> Result<()>;
    fn next_point(&mut self) -> Result<Option<Point<T>>>;
}

/// In-memory stream over a slice.
#[derive(Clone, Debug)]
pub struct SliceSource<'a, T> {
    points: &'a [Point<T>],
    pos: usize,
}

impl<'a, T> SliceSource<'a, T> {
    pub fn new(points: &'a [Point<T>]) -> Self {
        Self { points, pos: 0 }
    }
}

impl<T: Clone> PointSource<T> for SliceSource<'_, T> {
    fn rewind(&mut self) -> Result<()> {
        self.pos = 0;
        Ok(())
    }

    fn next_point(&mut self) -> Result<Option<Point<T>>> {
        let p = self.points.get(self.pos).cloned();
        self.pos += p.is_some() as usize;
        Ok(p)
    }
}

/// Rewinds `source` and feeds every point to `visit`; one call is one pass.
pub(crate) fn traverse<T, S, F>(source: &mut S, mut visit: F) -> Result<usize>
where
    S: PointSource<T> + ?Sized,
    F: FnMut(&Point<T>) -> Result<()>,
{
    source.rewind()?;
    let mut count = 0;
    while let Some(p) = source.next_point()? {
        visit(&p)?;
        count += 1;
    }
    Ok(count)
}
