//! Toric Newton spectrum by the box formula and by the truncated generating
//! series, spectrum at infinity (local: singularity spectrum) by
//! inclusion-exclusion over coordinate restrictions, and Milnor numbers.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{binomial, Rat, SpectrumSeries};
use crate::poly::Poly;
use crate::polytope::PolytopeModel;

/// Which computation produced a toric spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Box,
    Oracle,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Box => write!(f, "box"),
            Route::Oracle => write!(f, "oracle"),
        }
    }
}

/// Truncation cap used when none is configured: `8n`.
pub fn default_cap(n: usize) -> u32 {
    8 * n as u32
}

/// `Σ_q Σ_{Δ ∈ 𝓕(P), dim Δ = q} (z-1)^{n-1-q} Σ_{v ∈ Box(Δ)} z^{ν(v)}`.
pub fn toric_spectrum_box(m: &PolytopeModel) -> Result<SpectrumSeries> {
    if let Some((idx, _)) = m.f_of_p().find(|(_, f)| !f.is_simplex) {
        return Err(Error::NotSimplicialFaces(idx));
    }
    let n = m.dim();
    let mut total = SpectrumSeries::new();
    for (idx, face) in m.f_of_p() {
        let box_sum: SpectrumSeries = m
            .box_points(idx)?
            .into_iter()
            .map(|b| (b.nu, 1))
            .collect();
        let weight = SpectrumSeries::z_minus_one_pow((n - 1 - face.dim) as u32);
        total = &total + &(&weight * &box_sum);
    }
    Ok(total)
}

/// `(1-z)ⁿ Σ_{v ∈ ℕⁿ} z^{ν(v)}`, truncated at `ν ≤ T` and grown until the
/// retained exponents `≤ T - n` carry total mass `μ_P` with nonnegative
/// coefficients.
pub fn toric_spectrum_oracle(m: &PolytopeModel, cap: Option<u32>) -> Result<SpectrumSeries> {
    let n = m.dim() as u32;
    let cap = cap.unwrap_or_else(|| default_cap(m.dim()));
    let mass = m.normalized_volume();
    let d = m.denominator();
    for t in n + 1..=cap {
        let hist = m.scaled_value_histogram(t);
        let keep = i64::from(t - n) * d;
        let mut product: BTreeMap<i64, i64> = BTreeMap::new();
        for (&e, &c) in &hist {
            for j in 0..=i64::from(n) {
                let exp = e + j * d;
                if exp > keep {
                    break;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                *product.entry(exp).or_insert(0) += sign * binomial(i64::from(n), j) * c;
            }
        }
        product.retain(|_, c| *c != 0);
        let sum: i64 = product.values().sum();
        if sum == mass && product.values().all(|&c| c > 0) {
            return Ok(product
                .into_iter()
                .map(|(e, c)| (m.scaled_to_rat(e), c))
                .collect());
        }
    }
    Err(Error::NoConvergence { cap })
}

/// Box formula when every face of `𝓕(P)` is a simplex, the generating
/// series otherwise.
pub fn toric_spectrum(m: &PolytopeModel, cap: Option<u32>) -> Result<(SpectrumSeries, Route)> {
    match toric_spectrum_box(m) {
        Ok(s) => Ok((s, Route::Box)),
        Err(Error::NotSimplicialFaces(_)) => Ok((toric_spectrum_oracle(m, cap)?, Route::Oracle)),
        Err(e) => Err(e),
    }
}

/// Signed coordinate restrictions `(S, (-1)^{|S|})` over every proper
/// subset `S` of the variables.
fn proper_restrictions(n: usize) -> Vec<(BTreeSet<usize>, i64)> {
    (0u32..(1 << n) - 1)
        .map(|mask| {
            let set: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let sign = if set.len().is_multiple_of(2) { 1 } else { -1 };
            (set, sign)
        })
        .collect()
}

fn sign_of_full(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ_S (-1)^{|S|} P^{S}(z)`, the full restriction contributing `(-1)ⁿ`.
/// In local mode this is the singularity spectrum at the origin.
pub fn spectrum_at_infinity(p: &Poly, cap: Option<u32>) -> Result<SpectrumSeries> {
    p.check_convenient()?;
    let n = p.nvars();
    let parts: Vec<Result<SpectrumSeries>> = proper_restrictions(n)
        .into_par_iter()
        .map(|(set, sign)| {
            let restricted = if set.is_empty() { p.clone() } else { p.restrict(&set)? };
            let model = PolytopeModel::build(&restricted)?;
            let (s, _) = toric_spectrum(&model, cap)?;
            Ok(s.scaled(sign))
        })
        .collect();
    let mut total = SpectrumSeries::monomial(Rat::from_integer(0.into()), sign_of_full(n));
    for part in parts {
        total = &total + &part?;
    }
    Ok(total)
}

/// Kouchnirenko's alternating sum `Σ_S (-1)^{|S|} μ_{P_S}` with the empty
/// restriction contributing `(-1)ⁿ`.
pub fn milnor_from_volumes(p: &Poly) -> Result<i64> {
    p.check_convenient()?;
    let n = p.nvars();
    let mut total = sign_of_full(n);
    for (set, sign) in proper_restrictions(n) {
        let restricted = if set.is_empty() { p.clone() } else { p.restrict(&set)? };
        total += sign * PolytopeModel::build(&restricted)?.normalized_volume();
    }
    Ok(total)
}

/// Global (local) Milnor number, computed both from the spectrum and from
/// the alternating volume formula.
pub fn milnor_number(p: &Poly, cap: Option<u32>) -> Result<i64> {
    let from_spectrum = spectrum_at_infinity(p, cap)?.eval_at_one();
    let from_volumes = milnor_from_volumes(p)?;
    if from_spectrum != from_volumes {
        return Err(Error::InternalMismatch {
            formula: "alternating volume formula",
            detail: format!(
                "spectrum mass {from_spectrum} differs from volume sum {from_volumes}"
            ),
        });
    }
    Ok(from_spectrum)
}

/// `#{v ∈ ℕⁿ : ν(v) = 1}`.
pub fn boundary_lattice_points(m: &PolytopeModel) -> u64 {
    let d = m.denominator();
    let hist = m.scaled_value_histogram(1);
    hist.get(&d).copied().unwrap_or(0) as u64
}

/// `Σ_{v ∈ ℕⁿ, ν(v) < bound} z^{ν(v)}` for an integer bound.
pub fn newton_series_below(m: &PolytopeModel, bound: u32) -> SpectrumSeries {
    let limit = i64::from(bound) * m.denominator();
    m.scaled_value_histogram(bound)
        .into_iter()
        .filter(|(e, _)| *e < limit)
        .map(|(e, c)| (m.scaled_to_rat(e), c))
        .collect()
}
