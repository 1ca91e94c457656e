//! Adaptive Gauss-Legendre quadrature.
//!
//! Panels are integrated with a 15-point rule; the error estimate on a panel
//! compares the parent estimate against the sum over its two halves, and the
//! panel is bisected until the estimate settles. Mixing-measure integrands are
//! log-quadratic in the transformed coordinate, so a handful of well-seeded
//! panels converges very quickly.

use alloc::vec::Vec;
use num_traits::Float;

const GL_POINTS: usize = 15;
const MAX_DEPTH: u32 = 52;

/// 15-point Gauss-Legendre rule on [-1, 1].
///
/// Nodes are the roots of P_15, found by Newton iteration from the Chebyshev
/// initial guess; weights are 2 / ((1 - x^2) P'_15(x)^2). Computing them at
/// construction keeps the table self-validating (see `gl15_is_exact_on_polys`).
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: [f64; GL_POINTS],
    weights: [f64; GL_POINTS],
}

impl GaussLegendre {
    pub fn new() -> Self {
        let n = GL_POINTS;
        let mut nodes = [0.0; GL_POINTS];
        let mut weights = [0.0; GL_POINTS];
        let m = (n + 1) / 2;
        for i in 0..m {
            let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre recurrence for P_n(x) and P'_n(x).
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Single-panel estimate of the integral of `f` over `[a, b]`.
    pub fn panel<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for i in 0..GL_POINTS {
            acc += self.weights[i] * f(mid + half * self.nodes[i]);
        }
        acc * half
    }
}

impl Default for GaussLegendre {
    fn default() -> Self {
        Self::new()
    }
}

fn refine<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = rule.panel(f, a, mid);
    let right = rule.panel(f, mid, b);
    let err = (left + right - whole).abs();
    if err <= tol || depth >= MAX_DEPTH || mid <= a || mid >= b {
        return left + right;
    }
    refine(rule, f, a, mid, left, 0.5 * tol, depth + 1)
        + refine(rule, f, mid, b, right, 0.5 * tol, depth + 1)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = GaussLegendre::new();
    let whole = rule.panel(&f, a, b);
    refine(&rule, &f, a, b, whole, tol.max(f64::EPSILON), 0)
}

/// Integrate over a panel decomposition given by `breaks` (sorted ascending).
///
/// Each initial panel gets an equal share of the absolute tolerance. Seeding
/// breaks at known peaks of the integrand is what makes sharply concentrated
/// densities tractable.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> f64 {
    assert!(breaks.len() >= 2, "need at least one panel");
    let rule = GaussLegendre::new();
    let share = tol.max(f64::EPSILON) / (breaks.len() - 1) as f64;
    let mut acc = 0.0;
    for w in breaks.windows(2) {
        let whole = rule.panel(&f, w[0], w[1]);
        acc += refine(&rule, &f, w[0], w[1], whole, share, 0);
    }
    acc
}

/// Convenience: symmetric panel set around a list of centers.
pub fn panels_around(centers: &[f64], halfwidths: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut breaks = Vec::new();
    breaks.push(lo);
    for (&c, &h) in centers.iter().zip(halfwidths) {
        for k in [-8.0, -4.0, -2.0, -1.0, 1.0, 2.0, 4.0, 8.0] {
            let x = c + k * h;
            if x > lo && x < hi {
                breaks.push(x);
            }
        }
        if c > lo && c < hi {
            breaks.push(c);
        }
    }
    breaks.push(hi);
    breaks.sort_by(|x, y| x.partial_cmp(y).unwrap());
    breaks.dedup();
    breaks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl15_is_exact_on_polys() {
        // 15-point Gauss is exact for degree <= 29.
        let rule = GaussLegendre::new();
        for k in 0..=29u32 {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            let got = rule.panel(&|x: f64| x.powi(k as i32), -1.0, 1.0);
            assert!((got - exact).abs() < 1e-14, "degree {k}: {got} vs {exact}");
        }
    }

    #[test]
    fn adaptive_handles_smooth_and_peaked() {
        let got = integrate(|x: f64| x.exp(), 0.0, 1.0, 1e-13);
        assert!((got - (core::f64::consts::E - 1.0)).abs() < 1e-12);

        // Sharp Gaussian: integral over [-1, 1] of exp(-x^2/(2 s^2)) with s = 1e-3.
        let s = 1e-3;
        let got = integrate(|x: f64| (-x * x / (2.0 * s * s)).exp(), -1.0, 1.0, 1e-14);
        let exact = s * (2.0 * core::f64::consts::PI).sqrt();
        assert!((got - exact).abs() < 1e-12, "{got} vs {exact}");
    }

    #[test]
    fn seeded_panels_catch_offset_peak() {
        let c = 0.7315;
        let s = 1e-5;
        let f = |x: f64| (-(x - c) * (x - c) / (2.0 * s * s)).exp();
        let breaks = panels_around(&[c], &[s], -1.0, 1.0);
        let got = integrate_panels(f, &breaks, 1e-16);
        let exact = s * (2.0 * core::f64::consts::PI).sqrt();
        assert!((got - exact).abs() < 1e-12 * 1e5 * s, "{got} vs {exact}");
    }
}
