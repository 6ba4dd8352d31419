//! Occupancy statistics of `N` identical entities over two states.
//!
//! `probs[n]` is the probability that `n` of the `N` entities are in state 1.
//! Maxwell-Boltzmann treats the entities as distinguishable (binomial),
//! Bose-Einstein as indistinguishable (uniform over `n`).

use alloc::format;
use alloc::vec::Vec;

use crate::counts::{normalize_counts, CountTable};
use crate::error::{Error, Result};

/// Largest `N` accepted by [`maxwell_boltzmann`].
pub const MAX_MB_N: u32 = 170;
/// Largest `N` with exact integer binomials.
pub const MAX_EXACT_N: u32 = 60;
/// Additive smoothing for zero cells in [`kl_divergence`].
pub const KL_SMOOTHING: f64 = 1e-9;
/// TV differences at or below this are a tie.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OccupancyModel {
    BoseEinstein,
    MaxwellBoltzmann,
    Observed,
}

impl OccupancyModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            OccupancyModel::BoseEinstein => "bose_einstein",
            OccupancyModel::MaxwellBoltzmann => "maxwell_boltzmann",
            OccupancyModel::Observed => "observed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyDistribution {
    n_total: u32,
    probs: Vec<f64>,
    model: OccupancyModel,
}

impl OccupancyDistribution {
    pub fn n_total(&self) -> u32 {
        self.n_total
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn model(&self) -> OccupancyModel {
        self.model
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::data("N must be at least 1"));
    }
    Ok(())
}

/// `C(N, n)` for `n = 0..=N`, exact. Only for `N ≤ 60`.
pub fn binomial_counts(n_total: u32) -> Result<Vec<u128>> {
    check_n(n_total)?;
    if n_total > MAX_EXACT_N {
        return Err(Error::data(format!(
            "exact binomials need N <= {MAX_EXACT_N}, got {n_total}"
        )));
    }
    let n = u128::from(n_total);
    let mut out = Vec::with_capacity(n_total as usize + 1);
    let mut c: u128 = 1;
    for k in 0..=n {
        out.push(c);
        c = c * (n - k) / (k + 1);
    }
    Ok(out)
}

/// Binomial occupancy `C(N, n) / 2^N`.
pub fn maxwell_boltzmann(n_total: u32) -> Result<OccupancyDistribution> {
    check_n(n_total)?;
    if n_total > MAX_MB_N {
        return Err(Error::data(format!(
            "N must be at most {MAX_MB_N}, got {n_total}"
        )));
    }
    let n = n_total as usize;
    let scale = libm::ldexp(1.0, -(n_total as i32));
    let mut probs = alloc::vec![0.0; n + 1];
    let mut c = 1.0f64;
    for k in 0..=n / 2 {
        probs[k] = c * scale;
        probs[n - k] = c * scale;
        c = c * (n - k) as f64 / (k + 1) as f64;
    }
    Ok(OccupancyDistribution {
        n_total,
        probs,
        model: OccupancyModel::MaxwellBoltzmann,
    })
}

/// Uniform occupancy `1 / (N + 1)`.
pub fn bose_einstein(n_total: u32) -> Result<OccupancyDistribution> {
    check_n(n_total)?;
    let p = 1.0 / (f64::from(n_total) + 1.0);
    Ok(OccupancyDistribution {
        n_total,
        probs: alloc::vec![p; n_total as usize + 1],
        model: OccupancyModel::BoseEinstein,
    })
}

/// Normalised counts. The table must hold `N + 1` rows for `n = 0..=N`.
pub fn observed_distribution(table: &CountTable, n_total: u32) -> Result<OccupancyDistribution> {
    check_n(n_total)?;
    if table.len() != n_total as usize + 1 {
        return Err(Error::data(format!(
            "expected {} rows for N = {n_total}, got {}",
            n_total as usize + 1,
            table.len()
        )));
    }
    observed_from_counts(&table.counts())
}

/// Normalised counts with `N` taken as `counts.len() - 1`.
pub fn observed_from_counts(counts: &[u64]) -> Result<OccupancyDistribution> {
    if counts.len() < 2 {
        return Err(Error::data("an occupancy table needs at least two rows"));
    }
    let probs = normalize_counts(counts)?.into_vec();
    Ok(OccupancyDistribution {
        n_total: (counts.len() - 1) as u32,
        probs,
        model: OccupancyModel::Observed,
    })
}

fn same_n(p: &OccupancyDistribution, q: &OccupancyDistribution) -> Result<()> {
    if p.n_total != q.n_total {
        return Err(Error::data(format!(
            "distributions differ in N: {} vs {}",
            p.n_total, q.n_total
        )));
    }
    Ok(())
}

/// `½ Σ |p_n - q_n|`.
pub fn total_variation(p: &OccupancyDistribution, q: &OccupancyDistribution) -> Result<f64> {
    same_n(p, q)?;
    let sum: f64 = p
        .probs
        .iter()
        .zip(&q.probs)
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok((0.5 * sum).min(1.0))
}

fn smoothed(p: &[f64]) -> Vec<f64> {
    let raw: Vec<f64> = p
        .iter()
        .map(|&v| if v == 0.0 { KL_SMOOTHING } else { v })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

/// `KL(p ‖ q)` in nats after replacing zero cells of both with `1e-9` and
/// renormalising.
pub fn kl_divergence(p: &OccupancyDistribution, q: &OccupancyDistribution) -> Result<f64> {
    same_n(p, q)?;
    let (p, q) = (smoothed(&p.probs), smoothed(&q.probs));
    Ok(p.iter()
        .zip(&q)
        .map(|(a, b)| a * libm::log(a / b))
        .sum::<f64>()
        .max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    BoseEinstein,
    MaxwellBoltzmann,
    Indistinguishable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::BoseEinstein => "bose_einstein",
            Verdict::MaxwellBoltzmann => "maxwell_boltzmann",
            Verdict::Indistinguishable => "indistinguishable",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelComparison {
    pub n_total: u32,
    pub tv_bose_einstein: f64,
    pub tv_maxwell_boltzmann: f64,
    pub kl_bose_einstein: f64,
    pub kl_maxwell_boltzmann: f64,
    pub verdict: Verdict,
}

/// Compares an observed distribution with both models at the same `N`. The
/// model with the smaller total variation wins.
pub fn closest_model(observed: &OccupancyDistribution) -> Result<ModelComparison> {
    if observed.model != OccupancyModel::Observed {
        return Err(Error::data(format!(
            "closest_model needs observed data, got {}",
            observed.model.as_str()
        )));
    }
    let be = bose_einstein(observed.n_total)?;
    let mb = maxwell_boltzmann(observed.n_total)?;
    let tv_be = total_variation(observed, &be)?;
    let tv_mb = total_variation(observed, &mb)?;
    let verdict = if (tv_be - tv_mb).abs() <= TIE_TOLERANCE {
        Verdict::Indistinguishable
    } else if tv_be < tv_mb {
        Verdict::BoseEinstein
    } else {
        Verdict::MaxwellBoltzmann
    };
    Ok(ModelComparison {
        n_total: observed.n_total,
        tv_bose_einstein: tv_be,
        tv_maxwell_boltzmann: tv_mb,
        kl_bose_einstein: kl_divergence(observed, &be)?,
        kl_maxwell_boltzmann: kl_divergence(observed, &mb)?,
        verdict,
    })
}
