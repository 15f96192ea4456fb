//! Monotone piecewise-cubic (Fritsch-Carlson) interpolation.
//!
//! Used to represent series iterates on the node grid: the data has
//! `(x-a)^(alpha/2)`-type endpoint behavior and must not overshoot when
//! integrated against singular weights.

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// Build the interpolant; `xs` must be strictly increasing, length >= 2.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert_eq!(xs.len(), ys.len());
        assert!(xs.len() >= 2);
        assert!(xs.windows(2).all(|w| w[0] < w[1]), "abscissae must increase");

        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();

        let mut m = vec![0.0_f64; n];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                m[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        m[0] = edge_slope(h[0], h.get(1).copied().unwrap_or(h[0]), delta[0], delta.get(1).copied().unwrap_or(delta[0]));
        m[n - 1] = edge_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            delta[n - 2],
            if n >= 3 { delta[n - 3] } else { delta[n - 2] },
        );

        MonotoneCubic { xs, ys, slopes: m }
    }

    /// Evaluate at `t`; clamps to the endpoint values outside the range.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.xs.len();
        if t <= self.xs[0] {
            return self.ys[0];
        }
        if t >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = match self.xs.partition_point(|&x| x <= t) {
            0 => 0,
            k => k - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let s = (t - self.xs[i]) / h;
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        y0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + m0 * (s3 - 2.0 * s2 + s)
            + y1 * (-2.0 * s3 + 3.0 * s2)
            + m1 * (s3 - s2)
    }
}

/// One-sided three-point endpoint slope, clamped per Fritsch-Carlson.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_linear_data() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        let c = MonotoneCubic::new(xs, ys);
        for t in [0.25, 1.8, 5.5, 8.99] {
            assert!((c.eval(t) - (3.0 * t - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn no_overshoot_on_monotone_data() {
        // sqrt-like endpoint behavior, as in the series iterates
        let xs: Vec<f64> = (0..40).map(|i| (i as f64 / 39.0).powi(2)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 - x.sqrt()).collect();
        let c = MonotoneCubic::new(xs.clone(), ys);
        let mut prev = f64::INFINITY;
        for k in 0..=400 {
            let t = k as f64 / 400.0;
            let v = c.eval(t);
            assert!((0.0..=1.0 + 1e-12).contains(&v), "overshoot at {t}: {v}");
            assert!(v <= prev + 1e-12, "must stay nonincreasing");
            prev = v;
        }
    }

    #[test]
    fn interpolates_nodes_exactly() {
        let xs = vec![0.0, 0.1, 0.4, 1.0];
        let ys = vec![1.0, 0.7, 0.2, 0.0];
        let c = MonotoneCubic::new(xs.clone(), ys.clone());
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(c.eval(*x), *y);
        }
        // clamped outside
        assert_eq!(c.eval(-1.0), 1.0);
        assert_eq!(c.eval(2.0), 0.0);
    }
}
