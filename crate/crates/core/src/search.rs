//! Scalar minimization and root bracketing used by the constant solvers.

use crate::error::{Error, Result};

pub struct MinResult {
    pub x: f64,
    pub fx: f64,
    pub bracket_width: f64,
    pub evaluations: usize,
}

/// Golden-section minimization on `[lo, hi]` down to bracket width `tol_x`.
pub fn golden_min<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol_x: f64,
    max_iter: usize,
) -> Result<MinResult> {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut evals = 0usize;
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    evals += 2;
    for _ in 0..max_iter {
        if b - a <= tol_x {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2)?;
        }
        evals += 1;
    }
    let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    Ok(MinResult { x, fx, bracket_width: b - a, evaluations: evals })
}

/// Illinois-damped regula falsi for a sign change of `f` on `[lo, hi]`.
pub fn bracket_root<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol_x: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Internal(format!(
            "root not bracketed on [{a}, {b}]: f = ({fa:e}, {fb:e})"
        )));
    }
    let mut side = 0i8;
    for _ in 0..max_iter {
        let c = (a * fb - b * fa) / (fb - fa);
        let c = if c.is_finite() && c > a && c < b { c } else { 0.5 * (a + b) };
        let fc = f(c)?;
        if fc == 0.0 || (b - a) <= tol_x {
            return Ok(c);
        }
        if fa * fc < 0.0 {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}
