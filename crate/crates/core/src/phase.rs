use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// An exact rational `q` in `[0, 1)` standing for the scalar `exp(2 pi i q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "zero denominator");
        Phase::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Phase {
        let fl = r.floor();
        let v = r - fl;
        debug_assert!(v >= Ratio::zero() && v < Ratio::one());
        Phase(v)
    }

    pub const fn zero() -> Phase {
        Phase(Ratio::new_raw(0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.to_f64())
    }

    /// Nearest phase with denominator dividing `den`, if `z` is within `tol` of it.
    pub fn from_complex(z: Complex64, den: i64, tol: f64) -> Option<Phase> {
        if (z.norm() - 1.0).abs() > tol {
            return None;
        }
        let t = z.arg() / std::f64::consts::TAU;
        let k = (t * den as f64).round() as i64;
        let p = Phase::new(k, den);
        if (p.to_complex() - z).norm() <= tol {
            Some(p)
        } else {
            None
        }
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 + rhs.0)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_ratio(-self.0)
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, k: i64) -> Phase {
        Phase::from_ratio(self.0 * k)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        parse_phase(&s).ok_or_else(|| serde::de::Error::custom(format!("bad phase {s:?}")))
    }
}

/// Parses `num/den` or a bare integer.
pub fn parse_phase(s: &str) -> Option<Phase> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Phase::new(n, d))
        }
        None => Some(Phase::new(s.trim().parse().ok()?, 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_into_unit_interval() {
        assert_eq!(Phase::new(3, 2), Phase::new(1, 2));
        assert_eq!(Phase::new(-1, 3), Phase::new(2, 3));
        assert_eq!(Phase::new(4, 3) + Phase::new(2, 3), Phase::zero());
        assert_eq!(-Phase::new(1, 4), Phase::new(3, 4));
    }

    #[test]
    fn display_and_parse() {
        for p in [Phase::zero(), Phase::new(1, 2), Phase::new(5, 6)] {
            assert_eq!(parse_phase(&p.to_string()), Some(p));
        }
    }

    #[test]
    fn complex_round_trip() {
        let p = Phase::new(3, 8);
        assert_eq!(Phase::from_complex(p.to_complex(), 8, 1e-12), Some(p));
    }
}
