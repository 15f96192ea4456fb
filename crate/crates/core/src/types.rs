//! Domain types shared by the one- and two-free-boundary solvers.

use crate::error::{Error, Result};
use serde::Serialize;

/// A target domain `D = (center - radius, center + radius)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Interval {
    pub center: f64,
    pub radius: f64,
}

impl Interval {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !center.is_finite() || !radius.is_finite() {
            return Err(Error::Domain(format!(
                "interval radius must be positive and finite, got center {center}, radius {radius}"
            )));
        }
        Ok(Interval { center, radius })
    }

    pub fn lo(&self) -> f64 {
        self.center - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.center + self.radius
    }
}

/// One sample of a rate curve: the parameter `a` and the level it realizes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveSample {
    pub a: f64,
    pub value: f64,
}

/// A located Bernoulli constant: the minimal level, where the rate curve
/// attains it (in reference coordinates on (0,1)), and search diagnostics.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BernoulliResult {
    pub constant: f64,
    pub argmin_a: f64,
    pub evaluations: usize,
    pub bracket_width: f64,
}

/// One point of a sampled solution profile.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProfilePoint {
    pub x: f64,
    pub u: f64,
}

/// A solved free boundary instance: the set `K` (through its free points),
/// the level, and a sampled profile of `u` over the line.
#[derive(Debug, Clone, Serialize)]
pub struct FreeBoundarySolution {
    pub domain: Interval,
    /// One entry for the one-point problem, two symmetric entries for the
    /// two-point problem. Each lies strictly inside the domain.
    pub free_points: Vec<f64>,
    pub level: f64,
    pub profile: Vec<ProfilePoint>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_validation() {
        assert!(Interval::new(0.0, 1.0).is_ok());
        assert!(matches!(Interval::new(0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(Interval::new(0.0, -2.0), Err(Error::Domain(_))));
        assert!(matches!(Interval::new(f64::NAN, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn interval_endpoints() {
        let iv = Interval::new(1.5, 0.5).unwrap();
        assert_eq!(iv.lo(), 1.0);
        assert_eq!(iv.hi(), 2.0);
    }
}
