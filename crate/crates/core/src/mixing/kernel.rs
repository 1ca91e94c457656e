//! Conditional spin kernels of the de Finetti representation.
//!
//! Given the mixing draw t, plain Curie-Weiss spins are i.i.d. two-point
//! variables on {-1, +1} with mean t. The perturbed kernel is the
//! standardized variant used above the critical temperature: the
//! spontaneous magnetization c is subtracted (sign chosen by the sign of t)
//! and the result rescaled by 1/sqrt(1 - c^2), which moves the support to
//! four points but keeps the two-point Bernoulli structure.

use alloc::vec::Vec;
use num_traits::Float;

use super::{solve_spontaneous_magnetization, InverseTemperature};
use crate::rng::CounterRng;
use crate::{Error, Result};

/// i.i.d. spin kernel conditioned on the mixing variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinKernel {
    /// P_t = (1-t)/2 delta_{-1} + (1+t)/2 delta_{+1}.
    Plain { beta: InverseTemperature },
    /// Standardized supercritical kernel; `c` solves tanh(beta c) = c.
    Perturbed { beta: InverseTemperature, c: f64 },
}

impl SpinKernel {
    pub fn plain(beta: InverseTemperature) -> Self {
        SpinKernel::Plain { beta }
    }

    pub fn perturbed(beta: InverseTemperature) -> Result<Self> {
        let c = solve_spontaneous_magnetization(beta)?;
        Ok(SpinKernel::Perturbed { beta, c })
    }

    pub fn beta(&self) -> InverseTemperature {
        match *self {
            SpinKernel::Plain { beta } | SpinKernel::Perturbed { beta, .. } => beta,
        }
    }

    /// Support points and probabilities, ordered (plus-branch, minus-branch),
    /// where the plus branch is the one taken with probability (1+t)/2.
    pub fn support(&self, t: f64) -> [(f64, f64); 2] {
        let p_plus = 0.5 * (1.0 + t);
        match *self {
            SpinKernel::Plain { .. } => [(1.0, p_plus), (-1.0, 1.0 - p_plus)],
            SpinKernel::Perturbed { c, .. } => {
                let r = (1.0 - c * c).sqrt();
                let shift = if t > 0.0 { c } else { -c };
                [((1.0 - shift) / r, p_plus), ((-1.0 - shift) / r, 1.0 - p_plus)]
            }
        }
    }

    /// First moment of one spin given t.
    pub fn m1(&self, t: f64) -> f64 {
        match *self {
            SpinKernel::Plain { .. } => t,
            SpinKernel::Perturbed { c, .. } => {
                let r = (1.0 - c * c).sqrt();
                if t > 0.0 {
                    (t - c) / r
                } else {
                    (t + c) / r
                }
            }
        }
    }

    /// Second moment of one spin given t.
    pub fn m2(&self, t: f64) -> f64 {
        match *self {
            SpinKernel::Plain { .. } => 1.0,
            SpinKernel::Perturbed { .. } => {
                let [(y1, p1), (y2, p2)] = self.support(t);
                p1 * y1 * y1 + p2 * y2 * y2
            }
        }
    }

    /// E |y - center|^p under P_t.
    pub fn central_abs_moment(&self, t: f64, center: f64, p: u32) -> f64 {
        let [(y1, p1), (y2, p2)] = self.support(t);
        p1 * (y1 - center).abs().powi(p as i32) + p2 * (y2 - center).abs().powi(p as i32)
    }

    /// E |y^2 - center|^p under P_t.
    pub fn central_abs_moment_sq(&self, t: f64, center: f64, p: u32) -> f64 {
        let [(y1, p1), (y2, p2)] = self.support(t);
        p1 * (y1 * y1 - center).abs().powi(p as i32) + p2 * (y2 * y2 - center).abs().powi(p as i32)
    }

    /// One draw from P_t.
    #[inline]
    pub fn sample(&self, t: f64, rng: &mut CounterRng) -> f64 {
        let plus = rng.uniform() < 0.5 * (1.0 + t);
        match *self {
            SpinKernel::Plain { .. } => {
                if plus {
                    1.0
                } else {
                    -1.0
                }
            }
            SpinKernel::Perturbed { c, .. } => {
                let r = (1.0 - c * c).sqrt();
                let shift = if t > 0.0 { c } else { -c };
                let raw = if plus { 1.0 } else { -1.0 };
                (raw - shift) / r
            }
        }
    }
}

/// A realized family of conditionally i.i.d. spins.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinArray {
    pub values: Vec<f64>,
}

impl SpinArray {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// `count` i.i.d. draws from the kernel at t.
pub fn sample_spins(
    kernel: &SpinKernel,
    t: f64,
    count: usize,
    rng: &mut CounterRng,
) -> Result<SpinArray> {
    if !(t.abs() < 1.0) {
        return Err(Error::DomainError("spin kernel needs |t| < 1"));
    }
    let values = (0..count).map(|_| kernel.sample(t, rng)).collect();
    Ok(SpinArray { values })
}

/// Closed forms for the standardized supercritical kernel:
/// returns (m1(t), 1 - m2(t)), branch chosen by the sign of t.
pub fn perturbed_moments(beta: InverseTemperature, t: f64) -> Result<(f64, f64)> {
    let c = solve_spontaneous_magnetization(beta)?;
    let r2 = 1.0 - c * c;
    if t > 0.0 {
        Ok(((t - c) / r2.sqrt(), 2.0 * c * (t - c) / r2))
    } else {
        Ok(((t + c) / r2.sqrt(), -2.0 * c * (t + c) / r2))
    }
}
