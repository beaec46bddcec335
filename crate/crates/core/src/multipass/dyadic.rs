//! Exact dyadic angles `2*pi*num/2^level`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::geom::Direction;
use crate::scalar::Scalar;

/// Deepest level representable without overflowing the bisection arithmetic.
pub const MAX_LEVEL: u32 = 62;

/// Angle `2*pi*num/2^level` in canonical reduced form: `num` is odd, or the
/// angle is zero with `level == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicAngle {
    num: u64,
    level: u32,
}

impl DyadicAngle {
    pub const ZERO: Self = Self { num: 0, level: 0 };
    pub const PI: Self = Self { num: 1, level: 1 };

    pub fn new(num: u64, level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::Capacity {
                what: "dyadic level",
                size: level as usize,
                limit: MAX_LEVEL as usize,
            });
        }
        if num >= 1u64 << level {
            return Err(invalid(format!("numerator {num} out of range at level {level}")));
        }
        Ok(Self::reduced(num, level))
    }

    fn reduced(mut num: u64, mut level: u32) -> Self {
        if num == 0 {
            return Self::ZERO;
        }
        let shift = num.trailing_zeros().min(level);
        num >>= shift;
        level -= shift;
        Self { num, level }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Angle in radians, in `[0, 2*pi)`.
    pub fn radians(&self) -> f64 {
        std::f64::consts::TAU * (self.num as f64) / (2f64).powi(self.level as i32)
    }

    pub fn to_direction<T: Scalar>(&self) -> Direction<T> {
        Direction::from_angle(T::lit(self.radians()))
    }

    fn scaled(&self, level: u32) -> u64 {
        self.num << (level - self.level)
    }
}

impl Ord for DyadicAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.level.max(other.level);
        self.scaled(l).cmp(&other.scaled(l))
    }
}

impl PartialOrd for DyadicAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2pi*{}/2^{}", self.num, self.level)
    }
}

/// Midpoint of the clockwise (decreasing-angle) arc from `a` to `b`.
pub fn bisect_clockwise(a: DyadicAngle, b: DyadicAngle) -> Result<DyadicAngle> {
    if a == b {
        return Err(invalid("cannot bisect an angle with itself"));
    }
    let l = a.level.max(b.level);
    if l + 1 > MAX_LEVEL {
        return Err(Error::Capacity {
            what: "dyadic level",
            size: (l + 1) as usize,
            limit: MAX_LEVEL as usize,
        });
    }
    let modulus = 1u64 << l;
    let (x, y) = (a.scaled(l), b.scaled(l));
    let arc = (x + modulus - y) % modulus;
    let mid = (2 * x + 2 * modulus - arc) % (2 * modulus);
    Ok(DyadicAngle::reduced(mid, l + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(num: u64, level: u32) -> DyadicAngle {
        DyadicAngle::new(num, level).unwrap()
    }

    #[test]
    fn examples() {
        let z = DyadicAngle::ZERO;
        let pi = DyadicAngle::PI;
        assert_eq!(bisect_clockwise(z, pi).unwrap(), ang(3, 2));
        assert_eq!(bisect_clockwise(pi, z).unwrap(), ang(1, 2));
        assert_eq!(bisect_clockwise(ang(1, 2), z).unwrap(), ang(1, 3));
        assert!(bisect_clockwise(pi, pi).is_err());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(ang(4, 3), ang(1, 1));
        assert_eq!(ang(0, 5), DyadicAngle::ZERO);
        assert!(DyadicAngle::new(8, 3).is_err());
        assert!(DyadicAngle::new(1, MAX_LEVEL + 1).is_err());
        assert!(ang(1, 3) < ang(1, 2));
    }

    #[test]
    fn wraps_through_zero() {
        // Clockwise from pi/4 to 7pi/4 passes through 0.
        assert_eq!(bisect_clockwise(ang(1, 3), ang(7, 3)).unwrap(), DyadicAngle::ZERO);
    }

    #[test]
    fn directions_are_unit() {
        for a in [ang(1, 2), ang(5, 3), ang(123, 10)] {
            let d = a.to_direction::<f64>();
            let n = (d.coords()[0].powi(2) + d.coords()[1].powi(2)).sqrt();
            assert!((n - 1.0).abs() < 1e-12);
            assert!((d.coords()[0] - a.radians().cos()).abs() < 1e-15);
        }
    }
}
