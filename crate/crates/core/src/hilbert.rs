//! Complex-vector model of two concepts and their disjunction.
//!
//! Given the choice probabilities `μ(A)_k`, `μ(B)_k` and `μ(A or B)_k` of `n`
//! exemplars, [`build_model`] constructs unit vectors `|A⟩`, `|B⟩ ∈ ℂ^{n+1}`
//! with `⟨A|B⟩ = 0` such that
//!
//! ```text
//! μ(A or B)_k = ½⟨A+B|M_k|A+B⟩ = ½(μ(A)_k + μ(B)_k) + c_k √(μ(A)_k μ(B)_k) cos β_k
//! ```
//!
//! `M_k` projects onto coordinate `k`, except for the dominant exemplar `m`
//! whose projector spans coordinates `m` and `n` (the extra dimension). Only
//! `c_m` differs from one; it absorbs whatever imaginary part the other
//! exemplars leave in `⟨A|B⟩`.
//!
//! Indices are zero-based throughout; file formats convert `m` to one-based.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Offender, Result};
use crate::math::{acos_deg, unit_phase, Complex64};

/// Largest allowed deviation of an input column sum from one. Inside it the
/// column is rescaled.
pub const SUM_TOLERANCE: f64 = 1e-3;
/// Tolerance used by [`DisjunctionModel::verify`].
pub const VERIFY_TOLERANCE: f64 = 1e-9;
/// Radicands of `λ_k` above `-RADICAND_TOLERANCE` are treated as zero.
pub const RADICAND_TOLERANCE: f64 = 1e-12;
const COS_TOLERANCE: f64 = 1e-9;

/// Exemplar labels and the three probability columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DisjunctionData {
    labels: Vec<String>,
    mu_a: Vec<f64>,
    mu_b: Vec<f64>,
    mu_ab: Vec<f64>,
    renormalized: bool,
}

impl DisjunctionData {
    /// Validates the columns and rescales each one to sum to exactly one when
    /// its sum is within [`SUM_TOLERANCE`] of one.
    pub fn new(
        labels: Vec<String>,
        mu_a: Vec<f64>,
        mu_b: Vec<f64>,
        mu_ab: Vec<f64>,
    ) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::data(format!("need at least 2 exemplars, got {n}")));
        }
        if mu_a.len() != n || mu_b.len() != n || mu_ab.len() != n {
            return Err(Error::data(format!(
                "column lengths differ: {} labels, muA {}, muB {}, muAB {}",
                n,
                mu_a.len(),
                mu_b.len(),
                mu_ab.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::data(format!("duplicate label {l:?}")));
            }
        }
        let mut renormalized = false;
        let mut fix = |name: &str, col: Vec<f64>| -> Result<Vec<f64>> {
            if let Some((k, v)) = col
                .iter()
                .enumerate()
                .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
            {
                return Err(Error::data(format!(
                    "{name} of {:?} is {v}, expected a nonnegative probability",
                    labels[k]
                )));
            }
            let sum: f64 = col.iter().sum();
            if (sum - 1.0).abs() > SUM_TOLERANCE {
                return Err(Error::data(format!(
                    "{name} sums to {sum}, more than {SUM_TOLERANCE} away from 1"
                )));
            }
            if sum == 1.0 {
                return Ok(col);
            }
            renormalized = true;
            Ok(col.into_iter().map(|v| v / sum).collect())
        };
        let mu_a = fix("muA", mu_a)?;
        let mu_b = fix("muB", mu_b)?;
        let mu_ab = fix("muAB", mu_ab)?;
        Ok(Self {
            labels,
            mu_a,
            mu_b,
            mu_ab,
            renormalized,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mu_a(&self) -> &[f64] {
        &self.mu_a
    }

    pub fn mu_b(&self) -> &[f64] {
        &self.mu_b
    }

    pub fn mu_ab(&self) -> &[f64] {
        &self.mu_ab
    }

    /// True when at least one column had to be rescaled.
    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    /// `½(μ(A)_k + μ(B)_k)`, the value without interference.
    pub fn classical(&self, k: usize) -> f64 {
        0.5 * (self.mu_a[k] + self.mu_b[k])
    }

    /// `μ(A or B)_k - ½(μ(A)_k + μ(B)_k)`, the interference term.
    pub fn deviation(&self, k: usize) -> f64 {
        self.mu_ab[k] - self.classical(k)
    }

    /// The same data with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            mu_a: self.mu_b.clone(),
            mu_b: self.mu_a.clone(),
            mu_ab: self.mu_ab.clone(),
            renormalized: self.renormalized,
        }
    }

    fn offender(&self, k: usize, value: f64) -> Offender {
        Offender {
            index: k,
            label: self.labels[k].clone(),
            value,
        }
    }
}

/// `|λ_k| = √(μ(A)_k μ(B)_k - (μ(A or B)_k - ½(μ(A)_k + μ(B)_k))²)`.
///
/// Fails, listing every offending exemplar with its radicand, when the
/// interference term of some exemplar exceeds `√(μ(A)_k μ(B)_k)`.
pub fn lambda_magnitudes(d: &DisjunctionData) -> Result<Vec<f64>> {
    let radicands: Vec<f64> = (0..d.len())
        .map(|k| d.mu_a[k] * d.mu_b[k] - d.deviation(k) * d.deviation(k))
        .collect();
    let offenders: Vec<Offender> = radicands
        .iter()
        .enumerate()
        .filter(|(_, r)| **r < -RADICAND_TOLERANCE)
        .map(|(k, &r)| d.offender(k, r))
        .collect();
    if !offenders.is_empty() {
        return Err(Error::Infeasible {
            reason: String::from(
                "interference term exceeds sqrt(muA*muB) (negative lambda radicand)",
            ),
            offenders,
        });
    }
    Ok(radicands
        .into_iter()
        .map(|r| libm::sqrt(r.max(0.0)))
        .collect())
}

/// Index of the largest magnitude, lowest index on ties. `None` when empty.
pub fn dominant_index(magnitudes: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &v) in magnitudes.iter().enumerate() {
        match best {
            Some(b) if magnitudes[b] >= v => {}
            _ => best = Some(k),
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Order in which [`assign_signs`] visits exemplars: decreasing magnitude,
/// lower index first on ties.
pub fn magnitude_order(magnitudes: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..magnitudes.len()).collect();
    order.sort_by(|&i, &j| magnitudes[j].total_cmp(&magnitudes[i]).then(i.cmp(&j)));
    order
}

/// Greedy sign choice keeping `Σ λ_k ≥ 0`.
///
/// `m` gets a plus sign. Remaining exemplars are visited by decreasing
/// magnitude and take a minus sign whenever the running sum stays
/// nonnegative, a plus sign otherwise. The running sum never leaves
/// `[0, |λ_m|]` when `m` is the dominant index.
pub fn assign_signs(magnitudes: &[f64], m: usize) -> Vec<Sign> {
    let mut signs = vec![Sign::Plus; magnitudes.len()];
    if magnitudes.is_empty() {
        return signs;
    }
    let mut running = magnitudes[m];
    for k in magnitude_order(magnitudes) {
        if k == m {
            continue;
        }
        if running - magnitudes[k] >= 0.0 {
            signs[k] = Sign::Minus;
            running -= magnitudes[k];
        } else {
            running += magnitudes[k];
        }
    }
    signs
}

/// Signed `λ_k`.
pub fn signed_lambdas(magnitudes: &[f64], signs: &[Sign]) -> Vec<f64> {
    magnitudes
        .iter()
        .zip(signs)
        .map(|(v, s)| s.value() * v)
        .collect()
}

/// `c_m` making the imaginary part of `⟨A|B⟩` vanish:
///
/// ```text
/// c_m = √( ((-Σ_{k≠m} λ_k)² + (μ(A or B)_m - ½(μ(A)_m + μ(B)_m))²) / (μ(A)_m μ(B)_m) )
/// ```
pub fn compute_cm(d: &DisjunctionData, lambda: &[f64], m: usize) -> Result<f64> {
    let denom = d.mu_a[m] * d.mu_b[m];
    if denom <= 0.0 {
        return Err(Error::degenerate(format!(
            "muA*muB of dominant exemplar {:?} is zero",
            d.labels[m]
        )));
    }
    let rest: f64 = lambda
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != m)
        .map(|(_, l)| *l)
        .sum();
    let dev = d.deviation(m);
    let cm = libm::sqrt((rest * rest + dev * dev) / denom);
    if cm > 1.0 + COS_TOLERANCE {
        return Err(Error::Infeasible {
            reason: String::from("c_m exceeds 1"),
            offenders: vec![d.offender(m, cm)],
        });
    }
    Ok(cm.min(1.0))
}

/// `β_k = sign_k · arccos((2μ(A or B)_k - μ(A)_k - μ(B)_k) / (2 c_k √(μ(A)_k μ(B)_k)))`
/// in degrees, with `c_k = 1` except `c_m = cm`.
///
/// An exemplar with `μ(A)_k μ(B)_k = 0` and no interference term gets `+90°`;
/// with an interference term it is a degenerate-input error. `β_m` is `+90°`
/// when `c_m = 0`.
pub fn compute_phases(d: &DisjunctionData, signs: &[Sign], cm: f64, m: usize) -> Result<Vec<f64>> {
    let mut beta = Vec::with_capacity(d.len());
    let mut offenders = Vec::new();
    for k in 0..d.len() {
        let root = libm::sqrt(d.mu_a[k] * d.mu_b[k]);
        let dev = d.deviation(k);
        let c = if k == m { cm } else { 1.0 };
        if root == 0.0 {
            if dev != 0.0 {
                return Err(Error::degenerate(format!(
                    "exemplar #{} {:?} has muA*muB = 0 but an interference term of {dev:e}",
                    k + 1,
                    d.labels[k]
                )));
            }
            beta.push(90.0);
            continue;
        }
        if c == 0.0 {
            beta.push(90.0);
            continue;
        }
        let arg = dev / (c * root);
        if arg.abs() > 1.0 + COS_TOLERANCE {
            offenders.push(d.offender(k, arg));
            beta.push(f64::NAN);
            continue;
        }
        let sign = if k == m { 1.0 } else { signs[k].value() };
        beta.push(sign * acos_deg(arg));
    }
    if !offenders.is_empty() {
        return Err(Error::Infeasible {
            reason: String::from("phase cosine outside [-1, 1]"),
            offenders,
        });
    }
    Ok(beta)
}

/// `|A⟩` and `|B⟩` for given phases and `c_m`.
///
/// `A_k = √μ(A)_k`, `A_n = 0`; `B_k = e^{iβ_k} √μ(B)_k` for `k ≠ m`,
/// `B_m = c_m e^{iβ_m} √μ(B)_m`, `B_n = √(μ(B)_m (1 - c_m²))`.
pub fn assemble_vectors(
    d: &DisjunctionData,
    beta_deg: &[f64],
    cm: f64,
    m: usize,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = d.len();
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for k in 0..n {
        a.push(Complex64::new(libm::sqrt(d.mu_a[k]), 0.0));
        let c = if k == m { cm } else { 1.0 };
        b.push(unit_phase(beta_deg[k]) * (c * libm::sqrt(d.mu_b[k])));
    }
    a.push(Complex64::new(0.0, 0.0));
    b.push(Complex64::new(
        libm::sqrt((d.mu_b[m] * (1.0 - cm * cm)).max(0.0)),
        0.0,
    ));
    (a, b)
}

/// The constructed model.
#[derive(Debug, Clone, PartialEq)]
pub struct DisjunctionModel {
    labels: Vec<String>,
    m: usize,
    lambda: Vec<f64>,
    signs: Vec<Sign>,
    c_m: f64,
    beta_deg: Vec<f64>,
    vec_a: Vec<Complex64>,
    vec_b: Vec<Complex64>,
}

/// Runs the whole construction: magnitudes, dominant index, signs, `c_m`,
/// phases and vectors.
pub fn build_model(d: &DisjunctionData) -> Result<DisjunctionModel> {
    let magnitudes = lambda_magnitudes(d)?;
    let m = dominant_index(&magnitudes).ok_or_else(|| Error::data("no exemplars"))?;
    let signs = assign_signs(&magnitudes, m);
    let lambda = signed_lambdas(&magnitudes, &signs);
    let c_m = compute_cm(d, &lambda, m)?;
    let beta_deg = compute_phases(d, &signs, c_m, m)?;
    let (vec_a, vec_b) = assemble_vectors(d, &beta_deg, c_m, m);
    Ok(DisjunctionModel {
        labels: d.labels.clone(),
        m,
        lambda,
        signs,
        c_m,
        beta_deg,
        vec_a,
        vec_b,
    })
}

impl DisjunctionModel {
    /// Reassembles a model from stored parts, e.g. a model file. Only shapes
    /// are checked here; [`DisjunctionModel::verify`] checks the numbers.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        labels: Vec<String>,
        m: usize,
        lambda: Vec<f64>,
        signs: Vec<Sign>,
        c_m: f64,
        beta_deg: Vec<f64>,
        vec_a: Vec<Complex64>,
        vec_b: Vec<Complex64>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || m >= n {
            return Err(Error::data(format!(
                "dominant index {m} out of range for {n} exemplars"
            )));
        }
        if lambda.len() != n || signs.len() != n || beta_deg.len() != n {
            return Err(Error::data(
                "lambda, sign and beta must have one entry per exemplar",
            ));
        }
        if vec_a.len() != n + 1 || vec_b.len() != n + 1 {
            return Err(Error::data(format!(
                "vectors must have dimension {}",
                n + 1
            )));
        }
        if !(0.0..=1.0).contains(&c_m) {
            return Err(Error::data(format!("c_m = {c_m} outside [0, 1]")));
        }
        Ok(Self {
            labels,
            m,
            lambda,
            signs,
            c_m,
            beta_deg,
            vec_a,
            vec_b,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Zero-based dominant index.
    pub fn dominant(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn c_m(&self) -> f64 {
        self.c_m
    }

    /// `c_k`: one except at the dominant index.
    pub fn c(&self, k: usize) -> f64 {
        if k == self.m {
            self.c_m
        } else {
            1.0
        }
    }

    pub fn beta_deg(&self) -> &[f64] {
        &self.beta_deg
    }

    pub fn vec_a(&self) -> &[Complex64] {
        &self.vec_a
    }

    pub fn vec_b(&self) -> &[Complex64] {
        &self.vec_b
    }

    /// `⟨A|B⟩`.
    pub fn inner_product(&self) -> Complex64 {
        self.vec_a
            .iter()
            .zip(&self.vec_b)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Coordinates spanned by `M_k`.
    fn projector(&self, k: usize) -> impl Iterator<Item = usize> {
        let extra = (k == self.m).then_some(self.labels.len());
        core::iter::once(k).chain(extra)
    }

    /// `⟨A|M_k|A⟩`.
    pub fn weight_a(&self, k: usize) -> f64 {
        self.projector(k).map(|i| self.vec_a[i].norm_sqr()).sum()
    }

    /// `⟨B|M_k|B⟩`.
    pub fn weight_b(&self, k: usize) -> f64 {
        self.projector(k).map(|i| self.vec_b[i].norm_sqr()).sum()
    }

    /// `½⟨A+B|M_k|A+B⟩ = ½(⟨A|M_k|A⟩ + ⟨B|M_k|B⟩) + Re⟨A|M_k|B⟩`, evaluated
    /// on the stored vectors.
    pub fn reconstruct_disjunction(&self, k: usize) -> f64 {
        let interference: f64 = self
            .projector(k)
            .map(|i| (self.vec_a[i].conj() * self.vec_b[i]).re)
            .sum();
        0.5 * (self.weight_a(k) + self.weight_b(k)) + interference
    }

    pub fn verify(&self, d: &DisjunctionData) -> Result<Verification> {
        if d.len() != self.len() {
            return Err(Error::data(format!(
                "model has {} exemplars, data has {}",
                self.len(),
                d.len()
            )));
        }
        let norm = |v: &[Complex64]| libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        let residuals: Vec<f64> = (0..d.len())
            .map(|k| (self.reconstruct_disjunction(k) - d.mu_ab[k]).abs())
            .collect();
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        let inner = self.inner_product();
        let inner_product_modulus = libm::hypot(inner.re, inner.im);
        let norm_a_error = (norm(&self.vec_a) - 1.0).abs();
        let norm_b_error = (norm(&self.vec_b) - 1.0).abs();
        let pass = [
            inner_product_modulus,
            norm_a_error,
            norm_b_error,
            max_residual,
        ]
        .iter()
        .all(|v| *v <= VERIFY_TOLERANCE);
        Ok(Verification {
            inner_product_modulus,
            norm_a_error,
            norm_b_error,
            max_residual,
            residuals,
            pass,
        })
    }
}

/// Numerical checks of a model against its data.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    /// `|⟨A|B⟩|`.
    pub inner_product_modulus: f64,
    /// `|‖A‖ - 1|`.
    pub norm_a_error: f64,
    /// `|‖B‖ - 1|`.
    pub norm_b_error: f64,
    /// Largest `|reconstruct_disjunction(k) - μ(A or B)_k|`.
    pub max_residual: f64,
    pub residuals: Vec<f64>,
    /// All four quantities are within [`VERIFY_TOLERANCE`].
    pub pass: bool,
}

/// Fock-space amplitudes `a_n e^{iα_n}` over the sectors `n = 1, 2, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockWeights {
    components: Vec<(f64, f64)>,
}

impl FockWeights {
    /// `(amplitude, phase in degrees)` pairs; amplitudes nonnegative with
    /// squares summing to one within `1e-9`.
    pub fn new(components: Vec<(f64, f64)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::data("Fock weights need at least one component"));
        }
        if let Some((a, _)) = components
            .iter()
            .find(|(a, _)| !(*a >= 0.0 && a.is_finite()))
        {
            return Err(Error::data(format!("amplitude {a} must be nonnegative")));
        }
        let total: f64 = components.iter().map(|(a, _)| a * a).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::data(format!(
                "squared amplitudes sum to {total}, expected 1"
            )));
        }
        Ok(Self { components })
    }

    /// Real amplitudes `√p_n` with zero phases from normalised counts.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let p = crate::counts::normalize_counts(counts)?;
        Self::new(p.as_slice().iter().map(|&w| (libm::sqrt(w), 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[(f64, f64)] {
        &self.components
    }

    /// `a_n²` for the one-based sector `n`.
    pub fn weight(&self, n: usize) -> Result<f64> {
        match n.checked_sub(1).and_then(|i| self.components.get(i)) {
            Some((a, _)) => Ok(a * a),
            None => Err(Error::data(format!(
                "sector {n} out of range 1..={}",
                self.components.len()
            ))),
        }
    }
}
