//! Gamma, beta and Gauss hypergeometric functions, plus the bundle of
//! alpha-dependent constants used by every kernel formula in this crate.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, QuadratureSpec};
use serde::Serialize;

/// The order `alpha` with its derived constants, cached once per run.
///
/// * `c_alpha = sin(pi alpha / 2) / pi` — the interval Poisson kernel constant,
/// * `t_alpha = B(alpha, 1 - alpha/2)` — the first-tail beta factor,
/// * `a_alpha` — the 1-D normalizing constant of the operator itself.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AlphaContext {
    pub alpha: f64,
    pub c_alpha: f64,
    pub t_alpha: f64,
    pub a_alpha: f64,
}

impl AlphaContext {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::Domain(format!(
                "alpha must lie in (0, 2), got {alpha}"
            )));
        }
        let c_alpha = (std::f64::consts::PI * alpha / 2.0).sin() / std::f64::consts::PI;
        let t_alpha = beta(alpha, 1.0 - alpha / 2.0)?;
        let a_alpha = alpha * 2f64.powf(alpha) * gamma((1.0 + alpha) / 2.0)?
            / (2.0 * std::f64::consts::PI.sqrt() * gamma(1.0 - alpha / 2.0)?);
        Ok(AlphaContext { alpha, c_alpha, t_alpha, a_alpha })
    }

    /// `alpha / 2`, the exponent that shows up in every kernel power.
    #[inline]
    pub fn half(&self) -> f64 {
        self.alpha / 2.0
    }
}

// Lanczos g = 607/128 with the 14-term rational sum; accurate to a few ulp
// over the positive axis.
const LANCZOS_G_PLUS_HALF: f64 = 5.242_187_5;
const LANCZOS_SER0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// Natural log of the gamma function for `x > 0` (internal; callers validate).
pub(crate) fn ln_gamma(x: f64) -> f64 {
    let mut ser = LANCZOS_SER0;
    let mut y = x;
    for c in LANCZOS_COF {
        y += 1.0;
        ser += c / y;
    }
    let tmp = x + LANCZOS_G_PLUS_HALF;
    (x + 0.5) * tmp.ln() - tmp + (2.506_628_274_631_000_5 * ser / x).ln()
}

/// Gamma function on the positive axis.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma(x).exp())
}

/// Euler beta function `B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q)`.
pub fn beta(p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0) || !(q > 0.0) {
        return Err(Error::Domain(format!(
            "beta requires positive arguments, got ({p}, {q})"
        )));
    }
    Ok((ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)).exp())
}

const HYP2F1_TOL: f64 = 1e-12;
const HYP2F1_MAX_TERMS: usize = 50_000;

/// Gauss hypergeometric function `2F1(p, q; r; z)` for `z in [0, 1)`.
///
/// Power series with a geometric tail bound; switches to the Euler-type
/// integral representation when `z > 0.9` and `r > q > 0`, where the series
/// converges too slowly for a uniform relative error.
pub fn hyp2f1(p: f64, q: f64, r: f64, z: f64) -> Result<f64> {
    if r <= 0.0 && (r - r.round()).abs() < 1e-12 {
        return Err(Error::Domain(format!(
            "2F1 undefined for non-positive integer r = {r}"
        )));
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("2F1 requires 0 <= z < 1, got {z}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 0.9 && r > q && q > 0.0 {
        hyp2f1_integral(p, q, r, z)
    } else {
        hyp2f1_series(p, q, r, z)
    }
}

pub(crate) fn hyp2f1_series(p: f64, q: f64, r: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    for n in 0..HYP2F1_MAX_TERMS {
        let nf = n as f64;
        let ratio = (p + nf) * (q + nf) / ((r + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        // The term ratio tends to z; max(|ratio|, z) bounds the remaining
        // geometric decay once the prefactor has settled.
        let rho = ratio.abs().max(z);
        if n >= 4 && rho < 1.0 {
            let bound = term.abs() * rho / (1.0 - rho);
            if bound <= HYP2F1_TOL * sum.abs() {
                return Ok(sum);
            }
        }
    }
    let rho = z;
    Err(Error::Accuracy {
        context: format!("2F1({p}, {q}; {r}; {z}) series"),
        value: sum,
        error_estimate: term.abs() * rho / (1.0 - rho),
    })
}

pub(crate) fn hyp2f1_integral(p: f64, q: f64, r: f64, z: f64) -> Result<f64> {
    // B(q, r-q) 2F1 = int_0^inf t^(r-q-1) (t+1)^(p-r) (t+1-z)^(-p) dt.
    // Rescaling t = (1-z) tau pulls the z -> 1 blowup out analytically:
    //
    //   ... = (1-z)^(r-p-q) int_0^inf tau^(r-q-1) (1+(1-z)tau)^(p-r) (1+tau)^(-p) dtau
    //
    // leaving an O(1) integrand with left exponent r-q-1 and tail -q-1.
    debug_assert!(r > q && q > 0.0);
    let w = 1.0 - z;
    let integrand =
        move |t: f64| t.powf(r - q - 1.0) * (1.0 + w * t).powf(p - r) * (1.0 + t).powf(-p);
    let left = if (r - q - 1.0).abs() < 1e-14 { 0.0 } else { r - q - 1.0 };
    let spec = QuadratureSpec {
        max_subdivisions: 800,
        ..QuadratureSpec::default()
    }
    .with_exponents(left, 0.0)
    .with_tols(1e-13, 1e-12);
    let integral = integrate_semi_infinite(&integrand, 0.0, -q - 1.0, &spec)?;
    Ok(w.powf(r - p - q) * integral.value / beta(q, r - q)?)
}
