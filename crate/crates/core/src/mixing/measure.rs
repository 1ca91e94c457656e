//! The mixing measure of the Curie-Weiss de Finetti representation.
//!
//! For beta > 0 the mixture on (-1, 1) has density
//!
//! ```text
//! f_n(t) = C * exp(-(n/2) F_beta(t)) / (1 - t^2),
//! F_beta(t) = (1/beta) artanh(t)^2 + ln(1 - t^2),
//! ```
//!
//! and for beta = 0 it is the point mass at 0. All numerics run in the
//! coordinate u = artanh(t), where the transformed density is
//! `exp(-n * rate(u))` with `rate(u) = u^2/(2 beta) - ln cosh(u)`: the
//! substitution absorbs the 1/(1 - t^2) Jacobian exactly, so nothing blows up
//! as |t| -> 1. Below the critical temperature the rate has a single minimum
//! at 0; above it, two symmetric minima at +-beta*c where c is the
//! spontaneous magnetization.

use alloc::vec::Vec;
use num_traits::Float;

use super::{solve_spontaneous_magnetization, InverseTemperature};
use crate::quad::{integrate_panels, panels_around, GaussLegendre};
use crate::rng::CounterRng;
use crate::{Error, Result};

/// Default absolute tolerance for measure-level quadrature.
pub const QUAD_TOL: f64 = 1e-13;
/// Inverse-CDF table size.
const CDF_NODES: usize = 4096;
/// In-cell refinement stops once the bracketing CDF gap is below 2^-20.
const CDF_REFINE_GAP: f64 = 1.0 / (1 << 20) as f64;

/// ln cosh u without overflow for large |u|.
pub(crate) fn ln_cosh(u: f64) -> f64 {
    let a = u.abs();
    a + (-2.0 * a).exp().ln_1p() - core::f64::consts::LN_2
}

/// u^2/2 - ln cosh u, evaluated by series near 0 to dodge cancellation.
fn quartic_remainder(u: f64) -> f64 {
    let a = u.abs();
    if a < 0.15 {
        let s = u * u;
        // Integrated tanh series: u^4/12 - u^6/45 + 17 u^8/2520 - ...
        s * s
            * (1.0 / 12.0
                + s * (-1.0 / 45.0
                    + s * (17.0 / 2520.0 + s * (-31.0 / 14175.0 + s * (691.0 / 935550.0)))))
    } else {
        0.5 * u * u - ln_cosh(u)
    }
}

/// Large-deviation rate of the mixing density in the u coordinate.
#[inline]
fn rate(beta: f64, u: f64) -> f64 {
    // u^2/(2 beta) - ln cosh u, grouped so the small-u regime never cancels:
    // = u^2 (1 - beta)/(2 beta) + (u^2/2 - ln cosh u).
    u * u * (1.0 - beta) / (2.0 * beta) + quartic_remainder(u)
}

#[derive(Debug, Clone)]
struct Continuous {
    beta: f64,
    nf: f64,
    /// Nonnegative minimizer of the rate in u (0 for beta <= 1, beta*c above).
    mode: f64,
    /// Spontaneous magnetization for beta > 1.
    magnetization: Option<f64>,
    rate_min: f64,
    /// Local half width: n*(rate(mode + w) - rate_min) ~ 2.
    half_width: f64,
    /// Truncation: the density is below exp(-75) of its peak outside [-u_max, u_max].
    u_max: f64,
    /// Seeded panel boundaries for adaptive quadrature.
    breaks: Vec<f64>,
    /// integral of exp(-n (rate - rate_min)) over the truncated support.
    z_shifted: f64,
    /// Inverse-CDF table: cell boundaries in u and cumulative probabilities.
    cdf_u: Vec<f64>,
    cdf_p: Vec<f64>,
    rule: GaussLegendre,
}

/// Mixing measure of n exchangeable Curie-Weiss(beta) spins.
///
/// For the matrix ensembles n is the square of the matrix dimension. The
/// measure is immutable after construction and safe to share across workers.
#[derive(Debug, Clone)]
pub struct MixingMeasure {
    beta: InverseTemperature,
    n: u64,
    cont: Option<Continuous>,
}

impl MixingMeasure {
    pub fn new(beta: InverseTemperature, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError("mixing measure needs n >= 1"));
        }
        if beta.is_zero() {
            return Ok(MixingMeasure { beta, n, cont: None });
        }
        let b = beta.value();
        let nf = n as f64;

        let (mode, magnetization) = if beta.is_supercritical() {
            let c = solve_spontaneous_magnetization(beta)?;
            (b * c, Some(c))
        } else {
            (0.0, None)
        };
        let rate_min = rate(b, mode);

        // Local scale: grow w until the exponent moves by ~2.
        let excess = |u: f64| nf * (rate(b, u) - rate_min);
        let mut w = 1e-9;
        while excess(mode + w) < 2.0 && w < 1e9 {
            w *= 2.0;
        }
        // Truncation: exponent >= 75 beyond u_max.
        let mut u_max = mode + w;
        while excess(u_max) < 75.0 && u_max < 1e9 {
            u_max += w.max(0.25 * u_max);
        }

        let centers: Vec<f64> = if mode > 0.0 {
            [-mode, mode].into_iter().collect()
        } else {
            [0.0].into_iter().collect()
        };
        let widths: Vec<f64> = centers.iter().map(|_| w).collect();
        let breaks = panels_around(&centers, &widths, -u_max, u_max);

        let weight = |u: f64| (-(excess(u))).exp();
        // Two passes: a rough scale, then the real tolerance relative to it.
        let z0 = integrate_panels(&weight, &breaks, 1e-6 * w).max(f64::MIN_POSITIVE);
        let z_shifted = integrate_panels(&weight, &breaks, QUAD_TOL * z0);

        let mut cont = Continuous {
            beta: b,
            nf,
            mode,
            magnetization,
            rate_min,
            half_width: w,
            u_max,
            breaks,
            z_shifted,
            cdf_u: Vec::new(),
            cdf_p: Vec::new(),
            rule: GaussLegendre::new(),
        };
        cont.build_cdf_table();
        Ok(MixingMeasure { beta, n, cont: Some(cont) })
    }

    pub fn beta(&self) -> InverseTemperature {
        self.beta
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Spontaneous magnetization c(beta), defined for beta > 1.
    pub fn magnetization(&self) -> Option<f64> {
        self.cont.as_ref().and_then(|c| c.magnetization)
    }

    /// Natural log of the normalization constant C of the density in t.
    pub fn log_normalization(&self) -> Result<f64> {
        let c = self.cont.as_ref().ok_or(Error::DiracMeasure)?;
        Ok(c.nf * c.rate_min - c.z_shifted.ln())
    }

    /// The normalization constant C itself; may over/underflow for huge n
    /// above the critical temperature, where `log_normalization` is the
    /// usable form.
    pub fn normalization(&self) -> Result<f64> {
        Ok(self.log_normalization()?.exp())
    }

    /// Density of the mixing measure at t in (-1, 1). Undefined for beta = 0.
    pub fn density(&self, t: f64) -> Result<f64> {
        if !(t.abs() < 1.0) {
            return Err(Error::DomainError("mixing density needs |t| < 1"));
        }
        let c = self.cont.as_ref().ok_or(Error::DiracMeasure)?;
        let u = t.atanh();
        // f(t) = exp(-n (rate - rate_min)) * cosh(u)^2 / z_shifted; the
        // cosh^2 factor is the 1/(1 - t^2) of the t-coordinate density.
        let expo = -c.nf * (rate(c.beta, u) - c.rate_min) + 2.0 * ln_cosh(u);
        Ok(expo.exp() / c.z_shifted)
    }

    /// Expectation of h(t) under the measure, by adaptive quadrature in u.
    ///
    /// `tol` is the absolute tolerance on the result for |h| <= 1; it scales
    /// proportionally for larger integrands.
    pub fn expect_with_tol<H: Fn(f64) -> f64>(&self, h: H, tol: f64) -> f64 {
        match &self.cont {
            None => h(0.0),
            Some(c) => {
                let f = |u: f64| {
                    let wgt = (-(c.nf * (rate(c.beta, u) - c.rate_min))).exp();
                    if wgt == 0.0 {
                        0.0
                    } else {
                        h(u.tanh()) * wgt
                    }
                };
                integrate_panels(f, &c.breaks, tol * c.z_shifted) / c.z_shifted
            }
        }
    }

    /// p-th moment of t, absolute tolerance 1e-12.
    pub fn moment(&self, p: u32) -> f64 {
        if p == 0 {
            return 1.0;
        }
        self.expect_with_tol(|t| t.powi(p as i32), 1e-13)
    }

    /// Mass of the closed interval [a, b].
    pub fn interval_mass(&self, a: f64, b: f64) -> f64 {
        if a > b {
            return 0.0;
        }
        match &self.cont {
            None => {
                if a <= 0.0 && 0.0 <= b {
                    1.0
                } else {
                    0.0
                }
            }
            Some(c) => {
                let (ua, ub) = (clamp_atanh(a, c.u_max), clamp_atanh(b, c.u_max));
                if ua >= ub {
                    return 0.0;
                }
                let weight = |u: f64| (-(c.nf * (rate(c.beta, u) - c.rate_min))).exp();
                let mut breaks: Vec<f64> = c
                    .breaks
                    .iter()
                    .copied()
                    .filter(|&x| x > ua && x < ub)
                    .collect();
                breaks.insert(0, ua);
                breaks.push(ub);
                integrate_panels(weight, &breaks, QUAD_TOL * c.z_shifted) / c.z_shifted
            }
        }
    }

    /// Inverse-CDF sample of t. Exactly 0 for beta = 0.
    pub fn sample(&self, rng: &mut CounterRng) -> f64 {
        match &self.cont {
            None => 0.0,
            Some(c) => c.sample_u(rng.uniform()).tanh(),
        }
    }
}

fn clamp_atanh(t: f64, u_max: f64) -> f64 {
    if t <= -1.0 {
        -u_max
    } else if t >= 1.0 {
        u_max
    } else {
        t.atanh().clamp(-u_max, u_max)
    }
}

impl Continuous {
    fn weight(&self, u: f64) -> f64 {
        (-(self.nf * (rate(self.beta, u) - self.rate_min))).exp()
    }

    fn cell_mass(&self, a: f64, b: f64) -> f64 {
        self.rule.panel(&|u| self.weight(u), a, b)
    }

    /// Equal-ish-mass table: seed nodes around the modes, then repeatedly
    /// split the heaviest cell until the budget is reached.
    fn build_cdf_table(&mut self) {
        let mut nodes: Vec<f64> = Vec::new();
        nodes.push(-self.u_max);
        nodes.push(self.u_max);
        nodes.push(0.0);
        let centers: &[f64] = if self.mode > 0.0 {
            &[-self.mode, self.mode]
        } else {
            &[0.0]
        };
        for &c in centers {
            for k in 1..=96 {
                let x = k as f64 / 8.0 * self.half_width;
                for s in [-1.0, 1.0] {
                    let u = c + s * x;
                    if u.abs() < self.u_max {
                        nodes.push(u);
                    }
                }
            }
        }
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        nodes.dedup();

        let mut cells: Vec<(f64, f64, f64)> = nodes
            .windows(2)
            .map(|w| (w[0], w[1], self.cell_mass(w[0], w[1])))
            .collect();
        while cells.len() < CDF_NODES {
            let (idx, _) = cells
                .iter()
                .enumerate()
                .max_by(|a, b| a.1 .2.partial_cmp(&b.1 .2).unwrap())
                .unwrap();
            let (a, b, m) = cells[idx];
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b || m <= 0.0 {
                break;
            }
            let left = self.cell_mass(a, mid);
            let right = self.cell_mass(mid, b);
            cells[idx] = (a, mid, left);
            cells.insert(idx + 1, (mid, b, right));
        }

        let total: f64 = cells.iter().map(|c| c.2).sum();
        let mut cdf_u = Vec::with_capacity(cells.len() + 1);
        let mut cdf_p = Vec::with_capacity(cells.len() + 1);
        cdf_u.push(cells[0].0);
        cdf_p.push(0.0);
        let mut acc = 0.0;
        for &(_, b, m) in &cells {
            acc += m;
            cdf_u.push(b);
            cdf_p.push((acc / total).min(1.0));
        }
        *cdf_p.last_mut().unwrap() = 1.0;
        self.cdf_u = cdf_u;
        self.cdf_p = cdf_p;
    }

    /// Invert the CDF at v in [0, 1): table lookup plus local bisection of
    /// the actual cell mass until the bracketing gap is below 2^-20, then
    /// linear interpolation.
    fn sample_u(&self, v: f64) -> f64 {
        let i = match self.cdf_p.binary_search_by(|p| p.partial_cmp(&v).unwrap()) {
            Ok(i) => i.min(self.cdf_p.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.cdf_p.len() - 2),
        };
        let mut lo = self.cdf_u[i];
        let mut hi = self.cdf_u[i + 1];
        let mut p_lo = self.cdf_p[i];
        let mut p_hi = self.cdf_p[i + 1];
        let total_gap = p_hi - p_lo;
        if total_gap <= 0.0 {
            return lo;
        }
        // Local mass scale: table mass per unit of cdf.
        let scale = total_gap / self.cell_mass(lo, hi).max(f64::MIN_POSITIVE);
        while p_hi - p_lo > CDF_REFINE_GAP {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let m_left = self.cell_mass(lo, mid) * scale;
            if p_lo + m_left >= v {
                hi = mid;
                p_hi = p_lo + m_left;
            } else {
                lo = mid;
                p_lo += m_left;
            }
        }
        let gap = (p_hi - p_lo).max(f64::MIN_POSITIVE);
        lo + (v - p_lo) / gap * (hi - lo)
    }
}
