//! Outage probability and diversity order for the cascaded optical, parallel
//! optical and cascaded terahertz links.

use crate::channels::{thz_gain, ThzLinkBudget};
use crate::distributions::{z_cdf, z_cdf_asymptotic, CompositeProduct};
use crate::{Accuracy, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutageMethod {
    Exact,
    Asymptotic,
    UpperBound,
    HardCeiling,
}

impl OutageMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            OutageMethod::Exact => "exact",
            OutageMethod::Asymptotic => "asymptotic",
            OutageMethod::UpperBound => "upper_bound",
            OutageMethod::HardCeiling => "hard_ceiling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageResult {
    pub probability: f64,
    pub method: OutageMethod,
    pub accuracy: Accuracy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Fso,
    Thz,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && !v.is_nan() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

fn cdf_outage(ch: &CompositeProduct, x: f64, method: OutageMethod) -> Result<OutageResult> {
    let v = z_cdf(ch, x)?;
    Ok(OutageResult {
        probability: v.value.clamp(0.0, 1.0),
        method,
        accuracy: v.accuracy,
    })
}

/// Pr(Z ≤ 1/√(ρ_s/ρ_th)) for the optical cascade; `rho_ratio` is linear.
pub fn op_fso_cascade(ch: &CompositeProduct, rho_ratio: f64) -> Result<OutageResult> {
    positive("rho_ratio", rho_ratio)?;
    cdf_outage(ch, (1.0 / rho_ratio).sqrt(), OutageMethod::Exact)
}

/// High-SNR form of [`op_fso_cascade`]. Fails on degenerate exponent tuples.
pub fn op_fso_cascade_asymptotic(ch: &CompositeProduct, rho_ratio: f64) -> Result<OutageResult> {
    positive("rho_ratio", rho_ratio)?;
    let p = z_cdf_asymptotic(ch, (1.0 / rho_ratio).sqrt())?;
    Ok(OutageResult {
        probability: p,
        method: OutageMethod::Asymptotic,
        accuracy: Accuracy::Clean,
    })
}

/// min(𝓑)/2. Both link families share the same exponent tuple.
pub fn diversity_order(ch: &CompositeProduct, flavor: Flavor) -> f64 {
    match flavor {
        Flavor::Fso | Flavor::Thz => ch.b_tuple().into_iter().fold(f64::INFINITY, f64::min) / 2.0,
    }
}

/// All branches concatenated into one product law. Fails unless every
/// branch carries the same factors.
pub fn flatten_branches(branches: &[CompositeProduct]) -> Result<CompositeProduct> {
    let first = branches
        .first()
        .ok_or_else(|| Error::InvalidParameter("at least one branch is required".into()))?;
    if branches.iter().any(|b| b != first) {
        return Err(Error::HeterogeneousBranches);
    }
    let gg = branches
        .iter()
        .flat_map(|b| b.gg_links().iter().copied())
        .collect();
    let pe = branches
        .iter()
        .flat_map(|b| b.pe_links().iter().copied())
        .collect();
    CompositeProduct::new(gg, pe)
}

/// Outage bound for N identical parallel branches sharing the transmit
/// power: the arithmetic mean of the branch gains is at least their
/// geometric mean, so Pr(S ≤ t) ≤ Pr(ΠB_i ≤ t^N) with t = √(ρ_th/(Nρ_s)).
/// `rho_ratio` is ρ_s/ρ_th, linear.
pub fn op_fso_parallel_bound(
    branches: &[CompositeProduct],
    rho_ratio: f64,
) -> Result<OutageResult> {
    positive("rho_ratio", rho_ratio)?;
    let product = flatten_branches(branches)?;
    let n = branches.len() as f64;
    let t = (1.0 / (n * rho_ratio)).sqrt();
    cdf_outage(&product, t.powf(n), OutageMethod::UpperBound)
}

/// Outage of the terahertz cascade with transceiver distortion.
/// `gamma_ratio` is γ_s/γ_th and `gamma_th` the threshold, both linear.
pub fn op_thz(
    ch: &CompositeProduct,
    gamma_ratio: f64,
    gamma_th: f64,
    kappa_t: f64,
    kappa_r: f64,
) -> Result<OutageResult> {
    positive("gamma_ratio", gamma_ratio)?;
    positive("gamma_th", gamma_th)?;
    if !(kappa_t >= 0.0 && kappa_r >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "error vector magnitudes must be >= 0, got ({kappa_t}, {kappa_r})"
        )));
    }
    let distortion = gamma_th * (kappa_t * kappa_t + kappa_r * kappa_r);
    if distortion >= 1.0 {
        return Ok(OutageResult {
            probability: 1.0,
            method: OutageMethod::HardCeiling,
            accuracy: Accuracy::Clean,
        });
    }
    let x = (1.0 / (gamma_ratio * (1.0 - distortion))).sqrt();
    cdf_outage(ch, x, OutageMethod::Exact)
}

/// P_s·Πg_i/N_o.
pub fn gamma_s(budget: &ThzLinkBudget, p_s: f64, n_o: f64) -> Result<f64> {
    budget.validate()?;
    positive("p_s", p_s)?;
    positive("n_o", n_o)?;
    let mut g = 1.0;
    for i in 1..=budget.hops() {
        g *= thz_gain(budget, i)?;
    }
    Ok(p_s * g / n_o)
}
