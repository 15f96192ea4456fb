//! The explicit interval Poisson kernel, the Phi weight of the two-interval
//! rate formula, the Dirichlet representation and a mean-value residual used
//! as a harmonicity test.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_finite, integrate_semi_infinite, QuadratureSpec};
use crate::specialfn::AlphaContext;
use serde::Serialize;

/// A bounded open interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl OpenInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Domain(format!(
                "open interval requires finite lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(OpenInterval { lo, hi })
    }
}

/// Poisson kernel of the interval for the fractional Laplacian:
///
/// `P(x, y) = C_alpha ((x-lo)(hi-x))^(alpha/2) ((y-lo)(y-hi))^(-alpha/2) / |x-y|`
///
/// for `x` inside and `y` strictly outside the closed interval. The kernel
/// has no defined value for `y` on the closed boundary (a measure-zero set);
/// that is reported as a domain error.
pub fn poisson_interval(ctx: &AlphaContext, iv: OpenInterval, x: f64, y: f64) -> Result<f64> {
    if !(x > iv.lo && x < iv.hi) {
        return Err(Error::Domain(format!(
            "kernel pole x = {x} must lie inside ({}, {})",
            iv.lo, iv.hi
        )));
    }
    if y >= iv.lo && y <= iv.hi {
        return Err(Error::Domain(format!(
            "kernel argument y = {y} must lie outside [{}, {}]",
            iv.lo, iv.hi
        )));
    }
    Ok(poisson_interval_unchecked(ctx, iv, x, y))
}

#[inline]
pub(crate) fn poisson_interval_unchecked(
    ctx: &AlphaContext,
    iv: OpenInterval,
    x: f64,
    y: f64,
) -> f64 {
    let h = ctx.half();
    ctx.c_alpha * ((x - iv.lo) * (iv.hi - x)).powf(h) * ((y - iv.lo) * (y - iv.hi)).powf(-h)
        / (x - y).abs()
}

/// The weight `Phi(a, y) = ((y-a)(y-1))^(-alpha/2) |y-a|^(-1)` entering the
/// two-interval rate formula; defined where `(y-a)(y-1) > 0` and `y != a`.
pub fn phi(ctx: &AlphaContext, a: f64, y: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("phi requires a in (0,1), got {a}")));
    }
    let prod = (y - a) * (y - 1.0);
    if !(prod > 0.0) || y == a {
        return Err(Error::Domain(format!(
            "phi undefined for y = {y} in [a, 1] = [{a}, 1]"
        )));
    }
    Ok(prod.powf(-ctx.half()) / (y - a).abs())
}

/// Solve the outer Dirichlet problem by the Poisson representation:
/// `u(x) = int_(complement) P_iv(x, y) data(y) dy` for `x` inside `iv`.
///
/// `breakpoints` lists discontinuities of `data` so the complement integrals
/// subdivide exactly there (the piecewise-constant case of interest).
pub fn dirichlet_eval<F: Fn(f64) -> f64>(
    ctx: &AlphaContext,
    iv: OpenInterval,
    data: F,
    breakpoints: &[f64],
    x: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(x > iv.lo && x < iv.hi) {
        return Err(Error::Domain(format!(
            "evaluation point x = {x} must lie inside ({}, {})",
            iv.lo, iv.hi
        )));
    }
    complement_integral(ctx, iv, &data, breakpoints, x, spec)
}

/// Residual of the Poisson mean value property over `sub` at `x`:
/// `u(x) - int_(complement of closure(sub)) P_sub(x, y) u(y) dy`.
///
/// Near zero exactly when `u` is alpha-harmonic on a neighborhood of `sub`.
pub fn mean_value_residual<F: Fn(f64) -> f64>(
    ctx: &AlphaContext,
    u: F,
    sub: OpenInterval,
    x: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(x > sub.lo && x < sub.hi) {
        return Err(Error::Domain(format!(
            "evaluation point x = {x} must lie inside ({}, {})",
            sub.lo, sub.hi
        )));
    }
    let reproduced = complement_integral(ctx, sub, &u, breakpoints, x, spec)?;
    Ok(u(x) - reproduced)
}

/// `int_(-inf, lo] + int_[hi, inf)` of `P_iv(x, y) g(y)`, splitting each side
/// at the supplied breakpoints. Tail exponent is `-alpha - 1` on both sides.
fn complement_integral<F: Fn(f64) -> f64>(
    ctx: &AlphaContext,
    iv: OpenInterval,
    g: &F,
    breakpoints: &[f64],
    x: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let h = ctx.half();
    let tail = -ctx.alpha - 1.0;
    let mut total = 0.0;

    // Right side: y in (hi, inf), singular like (y - hi)^(-alpha/2) at hi.
    {
        let f = |y: f64| poisson_interval_unchecked(ctx, iv, x, y) * g(y);
        let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&b| b > iv.hi).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let mut lo = iv.hi;
        let mut first = true;
        for b in cuts {
            let left_exp = if first { -h } else { 0.0 };
            total += integrate_finite(&f, lo, b, &spec.with_exponents(left_exp, 0.0))?.value;
            lo = b;
            first = false;
        }
        let left_exp = if first { -h } else { 0.0 };
        total += integrate_semi_infinite(&f, lo, tail, &spec.with_exponents(left_exp, 0.0))?.value;
    }

    // Left side, mirrored onto s > 0 via y = lo - s.
    {
        let f = |s: f64| poisson_interval_unchecked(ctx, iv, x, iv.lo - s) * g(iv.lo - s);
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&b| b < iv.lo)
            .map(|b| iv.lo - b)
            .collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let mut lo = 0.0;
        let mut first = true;
        for b in cuts {
            let left_exp = if first { -h } else { 0.0 };
            total += integrate_finite(&f, lo, b, &spec.with_exponents(left_exp, 0.0))?.value;
            lo = b;
            first = false;
        }
        let left_exp = if first { -h } else { 0.0 };
        total += integrate_semi_infinite(&f, lo, tail, &spec.with_exponents(left_exp, 0.0))?.value;
    }

    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx1() -> AlphaContext {
        AlphaContext::new(1.0).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn kernel_spot_value() {
        // alpha = 1, iv = (0,1), x = 0.5, y = 2: (1/pi) sqrt(0.25/2) / 1.5
        let iv = OpenInterval::new(0.0, 1.0).unwrap();
        let got = poisson_interval(&ctx1(), iv, 0.5, 2.0).unwrap();
        assert!((got - 0.075_026_359_679_758_84).abs() < 1e-14, "got {got}");
        assert!(got > 0.0);
    }

    #[test]
    fn kernel_symmetry_about_center() {
        let iv = OpenInterval::new(-1.0, 1.0).unwrap();
        for y0 in [1.5, 2.0, 7.3] {
            let plus = poisson_interval(&ctx1(), iv, 0.0, y0).unwrap();
            let minus = poisson_interval(&ctx1(), iv, 0.0, -y0).unwrap();
            assert_eq!(plus, minus);
        }
    }

    #[test]
    fn kernel_domain_errors() {
        let iv = OpenInterval::new(0.0, 1.0).unwrap();
        assert!(matches!(poisson_interval(&ctx1(), iv, 1.5, 2.0), Err(Error::Domain(_))));
        assert!(matches!(poisson_interval(&ctx1(), iv, 0.5, 0.7), Err(Error::Domain(_))));
        // boundary convention: y exactly on the closed boundary is an error
        assert!(matches!(poisson_interval(&ctx1(), iv, 0.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(poisson_interval(&ctx1(), iv, 0.5, 0.0), Err(Error::Domain(_))));
        assert!(matches!(OpenInterval::new(1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn kernel_normalization() {
        // int over the complement of [0,1] of P(0.3, y) dy = 1
        let iv = OpenInterval::new(0.0, 1.0).unwrap();
        let got = complement_integral(&ctx1(), iv, &|_| 1.0, &[], 0.3, &spec()).unwrap();
        assert!((got - 1.0).abs() < 1e-8, "got {got}");
    }

    #[test]
    fn kernel_scaling_identity() {
        // P_{s iv}(s x, s y) = P_iv(x, y) / s
        let ctx = AlphaContext::new(0.7).unwrap();
        let iv = OpenInterval::new(0.2, 1.1).unwrap();
        let (x, y) = (0.65, 1.9);
        for s in [0.25, 2.0, 13.5] {
            let scaled = OpenInterval::new(s * iv.lo, s * iv.hi).unwrap();
            let lhs = poisson_interval(&ctx, scaled, s * x, s * y).unwrap();
            let rhs = poisson_interval(&ctx, iv, x, y).unwrap() / s;
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs(), "s = {s}");
        }
    }

    #[test]
    fn phi_spot_values() {
        let ctx = ctx1();
        let got = phi(&ctx, 0.5, 2.0).unwrap();
        assert!((got - 0.544_331_053_951_817_4).abs() < 1e-14, "got {got}");
        let got = phi(&ctx, 0.5, -1.0).unwrap();
        assert!((got - 0.384_900_179_459_750_5).abs() < 1e-14, "got {got}");
    }

    #[test]
    fn phi_diverges_toward_one() {
        // growth like (y-1)^(-alpha/2) as y -> 1+
        for alpha in [0.5, 1.0, 1.5] {
            let ctx = AlphaContext::new(alpha).unwrap();
            let near = phi(&ctx, 0.5, 1.0 + 1e-8).unwrap();
            let far = phi(&ctx, 0.5, 1.0 + 1e-4).unwrap();
            assert!(near > far * 10.0, "alpha = {alpha}: {near} vs {far}");
        }
    }

    #[test]
    fn phi_domain_errors() {
        let ctx = ctx1();
        assert!(matches!(phi(&ctx, 0.5, 0.7), Err(Error::Domain(_))));
        assert!(matches!(phi(&ctx, 0.5, 0.5), Err(Error::Domain(_))));
        assert!(matches!(phi(&ctx, 0.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(phi(&ctx, 1.2, 2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_matches_rate_integrand() {
        // Phi(a, -y) written out: ((y+a)(y+1))^(-alpha/2) (y+a)^(-1)
        let ctx = AlphaContext::new(1.3).unwrap();
        let a = 0.4;
        for y in [0.5, 0.9, 3.0] {
            let via_phi = phi(&ctx, a, -y).unwrap();
            let inline = ((y + a) * (y + 1.0)).powf(-ctx.half()) / (y + a);
            assert!((via_phi - inline).abs() <= 1e-14 * inline);
        }
    }

    #[test]
    fn dirichlet_constant_data() {
        let iv = OpenInterval::new(0.0, 1.0).unwrap();
        for x in [0.1, 0.5, 0.9] {
            let u = dirichlet_eval(&ctx1(), iv, |_| 1.0, &[], x, &spec()).unwrap();
            assert!((u - 1.0).abs() < 1e-8, "x = {x}: {u}");
            let z = dirichlet_eval(&ctx1(), iv, |_| 0.0, &[], x, &spec()).unwrap();
            assert!(z.abs() < 1e-12);
        }
    }

    #[test]
    fn dirichlet_piecewise_data_closed_form() {
        // iv = (0, 0.5), data = 1 on the complement of (0,1), 0 on [0.5, 1):
        // value at x = 0.25 equals 1 - u_{0.5}(0.25) = 1 - (2/pi) atan(sqrt(1/2)).
        let iv = OpenInterval::new(0.0, 0.5).unwrap();
        let data = |y: f64| if (0.0..1.0).contains(&y) { 0.0 } else { 1.0 };
        let got = dirichlet_eval(&ctx1(), iv, data, &[0.0, 1.0], 0.25, &spec()).unwrap();
        let want = 1.0 - 0.391_826_552_030_607_27;
        assert!((got - want).abs() < 1e-8, "got {got}, want {want}");
    }

    #[test]
    fn mean_value_residual_constant() {
        let sub = OpenInterval::new(0.1, 0.4).unwrap();
        let r = mean_value_residual(&ctx1(), |_| 0.7, sub, 0.25, &[], &spec()).unwrap();
        assert!(r.abs() < 1e-8, "residual {r}");
    }

    #[test]
    fn mean_value_residual_harmonic_profile() {
        // u_{1/2} extended by its boundary data is alpha-harmonic on (0, 1/2).
        let a = 0.5;
        let u = move |x: f64| {
            if x <= 0.0 || x >= 1.0 {
                0.0
            } else if x >= a {
                1.0
            } else {
                2.0 / std::f64::consts::PI
                    * (x.sqrt() * (1.0 - a).sqrt() / (a - x).sqrt()).atan()
            }
        };
        let sub = OpenInterval::new(0.1, 0.4).unwrap();
        let r = mean_value_residual(&ctx1(), u, sub, 0.25, &[0.0, a, 1.0], &spec()).unwrap();
        assert!(r.abs() < 1e-6, "residual {r}");
    }

    #[test]
    fn mean_value_residual_detects_non_harmonic() {
        let u = |x: f64| if x > 0.0 { 1.0 } else { 0.0 };
        let sub = OpenInterval::new(0.1, 0.4).unwrap();
        let r = mean_value_residual(&ctx1(), u, sub, 0.25, &[0.0], &spec()).unwrap();
        assert!(r.abs() > 1e-3, "indicator should not reproduce: {r}");
    }
}
