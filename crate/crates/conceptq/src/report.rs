//! Human-readable and JSON reports. Text reports print four decimals; JSON
//! reports carry twelve significant digits.

use std::fmt::Write as _;

use conceptq_core::bell::ChshResult;
use conceptq_core::hilbert::{DisjunctionData, DisjunctionModel, Verification};
use conceptq_core::stats::{
    binomial_counts, bose_einstein, maxwell_boltzmann, ModelComparison, OccupancyDistribution,
    MAX_EXACT_N,
};
use serde::Serialize;

use crate::error::Result;
use crate::formats::{round_sig, DATA_DIGITS};

fn r(v: f64) -> f64 {
    round_sig(v, DATA_DIGITS)
}

pub fn chsh_text(res: &ChshResult) -> String {
    format!(
        "E(A,B)    {:>8.4}\nE(A',B)   {:>8.4}\nE(A,B')   {:>8.4}\nE(A',B')  {:>8.4}\nS         {:>8.4}\nclassification {}\n",
        res.e_ab, res.e_apb, res.e_abp, res.e_apbp, res.s, res.classification
    )
}

#[derive(Serialize)]
struct ChshJson {
    e_ab: f64,
    e_apb: f64,
    e_abp: f64,
    e_apbp: f64,
    s: f64,
    classification: &'static str,
}

pub fn chsh_json(res: &ChshResult) -> String {
    let j = ChshJson {
        e_ab: r(res.e_ab),
        e_apb: r(res.e_apb),
        e_abp: r(res.e_abp),
        e_apbp: r(res.e_apbp),
        s: r(res.s),
        classification: res.classification.as_str(),
    };
    serde_json::to_string_pretty(&j).expect("plain data serialises") + "\n"
}

pub fn model_text(d: &DisjunctionData, model: &DisjunctionModel, v: &Verification) -> String {
    let m = model.dominant();
    let mut out = String::new();
    let _ = writeln!(out, "exemplars {}", model.len());
    if d.was_renormalized() {
        let _ = writeln!(out, "input columns renormalised to sum to 1");
    }
    let _ = writeln!(out, "m         {} ({})", m + 1, model.labels()[m]);
    let _ = writeln!(out, "c_m       {:.4}", model.c_m());
    let _ = writeln!(out, "beta_m    {:.4}", model.beta_deg()[m]);
    let _ = writeln!(out, "{:<14} {:>8} {:>10}", "label", "lambda", "beta");
    for k in 0..model.len() {
        let _ = writeln!(
            out,
            "{:<14} {:>8.4} {:>10.4}",
            model.labels()[k],
            model.lambda()[k],
            model.beta_deg()[k]
        );
    }
    let _ = writeln!(out, "|<A|B>|          {:.3e}", v.inner_product_modulus);
    let _ = writeln!(out, "| |A| - 1 |      {:.3e}", v.norm_a_error);
    let _ = writeln!(out, "| |B| - 1 |      {:.3e}", v.norm_b_error);
    let _ = writeln!(out, "max residual     {:.3e}", v.max_residual);
    let _ = writeln!(
        out,
        "verification     {}",
        if v.pass { "pass" } else { "fail" }
    );
    out
}

pub fn stats_text(observed: &OccupancyDistribution, cmp: &ModelComparison) -> Result<String> {
    let n = cmp.n_total;
    let mb = maxwell_boltzmann(n)?;
    let be = bose_einstein(n)?;
    let exact = if n <= MAX_EXACT_N {
        Some(binomial_counts(n)?)
    } else {
        None
    };
    let mut out = String::new();
    let _ = writeln!(out, "N = {n}");
    let _ = writeln!(
        out,
        "{:>4} {:>20} {:>8} {:>8} {:>8}",
        "n", "MB count", "MB", "BE", "observed"
    );
    for k in 0..=n as usize {
        let count = exact
            .as_ref()
            .map_or_else(|| "-".to_string(), |c| c[k].to_string());
        let _ = writeln!(
            out,
            "{:>4} {:>20} {:>8.4} {:>8.4} {:>8.4}",
            k,
            count,
            mb.probs()[k],
            be.probs()[k],
            observed.probs()[k]
        );
    }
    let _ = writeln!(out, "TV(observed, BE)  {:.4}", cmp.tv_bose_einstein);
    let _ = writeln!(out, "TV(observed, MB)  {:.4}", cmp.tv_maxwell_boltzmann);
    let _ = writeln!(out, "KL(observed||BE)  {:.4}", cmp.kl_bose_einstein);
    let _ = writeln!(out, "KL(observed||MB)  {:.4}", cmp.kl_maxwell_boltzmann);
    let _ = writeln!(out, "verdict {}", cmp.verdict);
    Ok(out)
}

#[derive(Serialize)]
struct StatsJson<'a> {
    n: u32,
    observed: Vec<f64>,
    tv_bose_einstein: f64,
    tv_maxwell_boltzmann: f64,
    kl_bose_einstein: f64,
    kl_maxwell_boltzmann: f64,
    verdict: &'a str,
}

pub fn stats_json(observed: &OccupancyDistribution, cmp: &ModelComparison) -> String {
    let j = StatsJson {
        n: cmp.n_total,
        observed: observed.probs().iter().copied().map(r).collect(),
        tv_bose_einstein: r(cmp.tv_bose_einstein),
        tv_maxwell_boltzmann: r(cmp.tv_maxwell_boltzmann),
        kl_bose_einstein: r(cmp.kl_bose_einstein),
        kl_maxwell_boltzmann: r(cmp.kl_maxwell_boltzmann),
        verdict: cmp.verdict.as_str(),
    };
    serde_json::to_string_pretty(&j).expect("plain data serialises") + "\n"
}

pub fn weights_text(weights: &[f64]) -> String {
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| format!("{} {:.4}\n", i + 1, w))
        .collect()
}
