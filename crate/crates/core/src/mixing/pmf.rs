//! Exact finite-n probability oracles for Curie-Weiss spins.
//!
//! The configuration probability is exp(beta S^2 / (2n)) / Z with S the spin
//! sum; the partition function is summed over magnetization classes with
//! binomial weights (O(n), not O(2^n)) in log space. The mixture oracle
//! recomputes the same probability as a quadrature over the mixing measure,
//! which is the executable form of the de Finetti representation.

use num_traits::Float;

use super::{InverseTemperature, MixingMeasure};
use crate::{Error, Result};

/// Class-summed exact computations stay well under a second up to here.
pub const ORACLE_MAX_SPINS: usize = 24;

fn check_config(n: usize, config: &[f64]) -> Result<()> {
    if n > ORACLE_MAX_SPINS {
        return Err(Error::OracleScaleExceeded { n, cap: ORACLE_MAX_SPINS });
    }
    if config.len() != n {
        return Err(Error::ConfigError("configuration length must equal n"));
    }
    if config.iter().any(|&y| y != 1.0 && y != -1.0) {
        return Err(Error::DomainError("spin entries must be +-1"));
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> f64 {
    // Exact in u64 for n <= 24.
    let mut acc: u64 = 1;
    for j in 0..k.min(n - k) {
        acc = acc * (n - j) as u64 / (j + 1) as u64;
    }
    acc as f64
}

/// log of the partition function Z_{beta,n} = sum over configs of
/// exp(beta S^2 / (2n)), via the n+1 magnetization classes.
fn log_partition(beta: f64, n: usize) -> f64 {
    let nf = n as f64;
    let mut max_term = f64::NEG_INFINITY;
    let mut terms = [0.0f64; ORACLE_MAX_SPINS + 1];
    for k in 0..=n {
        let s = (2 * k) as f64 - nf;
        let t = binomial(n, k).ln() + beta * s * s / (2.0 * nf);
        terms[k] = t;
        if t > max_term {
            max_term = t;
        }
    }
    let sum: f64 = terms[..=n].iter().map(|&t| (t - max_term).exp()).sum();
    max_term + sum.ln()
}

/// Exact probability of one specific +-1 configuration.
pub fn exact_cw_pmf(beta: InverseTemperature, n: usize, config: &[f64]) -> Result<f64> {
    check_config(n, config)?;
    let s: f64 = config.iter().sum();
    let b = beta.value();
    Ok((b * s * s / (2.0 * n as f64) - log_partition(b, n)).exp())
}

/// The same probability computed as a product integral against the mixing
/// measure: integral of prod_i (1 + t y_i)/2 d mu(t).
pub fn definetti_pmf_oracle(beta: InverseTemperature, n: usize, config: &[f64]) -> Result<f64> {
    check_config(n, config)?;
    if beta.is_zero() {
        // Point-mass mixture at t = 0: i.i.d. fair signs.
        return Ok(0.5f64.powi(n as i32));
    }
    let k_plus = config.iter().filter(|&&y| y == 1.0).count() as i32;
    let k_minus = n as i32 - k_plus;
    let mm = MixingMeasure::new(beta, n as u64)?;
    let value = mm.expect_with_tol(
        |t| (0.5 * (1.0 + t)).powi(k_plus) * (0.5 * (1.0 - t)).powi(k_minus),
        1e-12,
    );
    Ok(value)
}

/// Exact l-point correlation E[Y_1 ... Y_l] of distinct Curie-Weiss spins.
///
/// Conditioned on t the spins are i.i.d. with mean t, so the correlation
/// collapses to the l-th moment of the mixing measure.
pub fn correlation_exact(beta: InverseTemperature, n: u64, ell: u32) -> Result<f64> {
    if ell == 0 {
        return Err(Error::DomainError("correlation order must be >= 1"));
    }
    if beta.is_zero() {
        return Ok(0.0);
    }
    let mm = MixingMeasure::new(beta, n)?;
    Ok(mm.moment(ell))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(b: f64) -> InverseTemperature {
        InverseTemperature::new(b).unwrap()
    }

    #[test]
    fn infinite_temperature_is_uniform() {
        let p = exact_cw_pmf(beta(0.0), 2, &[1.0, 1.0]).unwrap();
        assert!((p - 0.25).abs() < 1e-15);
        let q = definetti_pmf_oracle(beta(0.0), 5, &[1.0, -1.0, 1.0, 1.0, -1.0]).unwrap();
        assert!((q - 0.03125).abs() < 1e-15);
    }

    #[test]
    fn two_spins_at_unit_beta() {
        // Aligned pair: exp(beta)/Z with Z = 2 exp(beta) + 2.
        let e = core::f64::consts::E;
        let p = exact_cw_pmf(beta(1.0), 2, &[1.0, 1.0]).unwrap();
        assert!((p - e / (2.0 * e + 2.0)).abs() < 1e-14);
    }

    #[test]
    fn pmf_is_exchangeable() {
        let b = beta(0.9);
        let p1 = exact_cw_pmf(b, 4, &[1.0, 1.0, -1.0, 1.0]).unwrap();
        let p2 = exact_cw_pmf(b, 4, &[1.0, -1.0, 1.0, 1.0]).unwrap();
        let p3 = exact_cw_pmf(b, 4, &[-1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(p2, p3);
    }

    #[test]
    fn oracle_rejects_bad_inputs() {
        let b = beta(0.5);
        assert!(matches!(
            exact_cw_pmf(b, 25, &[1.0; 25]),
            Err(Error::OracleScaleExceeded { .. })
        ));
        assert!(exact_cw_pmf(b, 2, &[0.5, 1.0]).is_err());
    }

    #[test]
    fn mixture_oracle_agrees_with_exact_pmf() {
        let b = beta(0.8);
        let config = [1.0; 8];
        let exact = exact_cw_pmf(b, 8, &config).unwrap();
        let mixed = definetti_pmf_oracle(b, 8, &config).unwrap();
        assert!((exact - mixed).abs() < 1e-8, "exact {exact} mixed {mixed}");
    }

    #[test]
    fn correlations_follow_temperature_regimes() {
        // Odd correlations vanish; infinite temperature kills all of them.
        assert_eq!(correlation_exact(beta(0.0), 100, 2).unwrap(), 0.0);
        for b in [0.5, 1.0, 1.5] {
            let c3 = correlation_exact(beta(b), 10_000, 3).unwrap();
            assert!(c3.abs() < 1e-12, "beta {b}: {c3}");
        }
        // Supercritical: two-point correlation approaches c(beta)^2.
        let b = beta(1.5);
        let c = crate::mixing::solve_spontaneous_magnetization(b).unwrap();
        let corr = correlation_exact(b, 10_000, 2).unwrap();
        assert!((corr - c * c).abs() < 0.05 * c * c, "corr {corr} c^2 {}", c * c);
    }
}
