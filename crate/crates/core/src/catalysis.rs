//! Catalysed conversions.
//!
//! A catalyst `φ` is borrowed and returned intact:
//! `p_max(ψ1 ⊗ φ → ψ2 ⊗ φ)`. This module also holds the two constructions
//! relating catalysis to multiple-copy conversion:
//!
//! - [`construct_catalyst`] turns an `m`-copy protocol into a finite catalyst
//!   whose catalysed rate is at least the `m`-copy per-copy rate.
//! - [`simulate_protocol`] bounds an `m`-copy conversion from below by
//!   generating `φ` out of a borrowed maximally entangled state `Φ_k`, using
//!   it `m` times, and converting it back to `Φ_k`.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{serde_count, serde_scalar, NumericMode, Scalar, CHECK_TOLERANCE};
use crate::spectra::{weighted_direct_sum, CompressedSpectrum};
use crate::vidal::p_max;

pub fn p_catalyzed<S: Scalar>(
    source: &CompressedSpectrum<S>,
    target: &CompressedSpectrum<S>,
    catalyst: &CompressedSpectrum<S>,
) -> S {
    p_max(&source.tensor_product(catalyst), &target.tensor_product(catalyst)).p_max
}

/// `Φ_k`: the flat spectrum `(1/k, .., 1/k)`.
pub fn maximally_entangled<S: Scalar>(k: &BigUint) -> Result<CompressedSpectrum<S>> {
    if k.is_zero() {
        return Err(Error::ZeroDimension);
    }
    Ok(CompressedSpectrum::uniform(k))
}

/// `p_max(Φ_k → target)`, which is 1 whenever `target` fits in `k` levels.
pub fn p_max_from_max_entangled<S: Scalar>(k: &BigUint, target: &CompressedSpectrum<S>) -> Result<S> {
    let rank = target.rank();
    if rank > *k {
        return Err(Error::RankExceedsK { rank, k: k.clone() });
    }
    let general = p_max(&maximally_entangled(k)?, target).p_max;
    if !general.is_unit() {
        return Err(Error::CrossCheck(format!(
            "p_max(Φ_{k} → target) = {general}, expected 1"
        )));
    }
    Ok(S::one())
}

/// `p_max(catalyst → Φ_k) = k · γ_k`, with `k` the catalyst dimension and
/// `γ_k` its least coefficient.
pub fn p_max_to_max_entangled<S: Scalar>(catalyst: &CompressedSpectrum<S>, k: &BigUint) -> Result<S> {
    if catalyst.dimension() != k {
        return Err(Error::CatalystDimensionMismatch {
            k: k.clone(),
            dimension: catalyst.dimension().clone(),
        });
    }
    if !catalyst.is_full_rank() {
        return Err(Error::RankDeficientCatalyst {
            rank: catalyst.rank(),
            dimension: catalyst.dimension().clone(),
        });
    }
    let value = S::from_count(k) * catalyst.smallest_positive();
    let general = p_max(catalyst, &maximally_entangled(k)?).p_max;
    if !general.matches(&value) {
        return Err(Error::CrossCheck(format!(
            "p_max(catalyst → Φ_{k}) = {general}, but k·γ_k = {value}"
        )));
    }
    Ok(value)
}

fn power_or_unit<S: Scalar>(x: &CompressedSpectrum<S>, e: u32) -> Result<CompressedSpectrum<S>> {
    if e == 0 {
        Ok(CompressedSpectrum::uniform(&BigUint::one()))
    } else {
        x.tensor_power(e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct CatalystConstruction<S> {
    pub catalyst: CompressedSpectrum<S>,
    pub copies: u32,
    /// `p_max(ψ1^⊗m → ψ2^⊗m)`.
    #[serde(with = "serde_scalar")]
    pub radicand: S,
    /// `radicand^(1/m)`, for display.
    pub rate: f64,
    /// The weights `rate^j` had no exact rational form and were rounded
    /// through binary floating point (exact mode only).
    pub weights_rounded: bool,
}

/// Catalyst `⊕_{j<m} p_m^j · ψ1^⊗(m-1-j) ⊗ ψ2^⊗j` (normalized), built from the
/// `m`-copy per-copy rate `p_m`.
pub fn construct_catalyst<S: Scalar>(
    source: &CompressedSpectrum<S>,
    target: &CompressedSpectrum<S>,
    m: u32,
) -> Result<CatalystConstruction<S>> {
    if m < 2 {
        return Err(Error::CopyCountTooSmall { m });
    }
    let radicand = p_max(&source.tensor_power(m)?, &target.tensor_power(m)?).p_max;
    let (weights, weights_rounded) = match radicand.exact_root(m) {
        Some(root) => ((0..m).map(|j| root.powi(j)).collect::<Vec<S>>(), false),
        None => {
            let root = radicand.float_root(m);
            let weights = (0..m)
                .map(|j| S::from_f64(root.powi(j as i32)).expect("finite root"))
                .collect();
            (weights, S::MODE == NumericMode::Exact)
        }
    };

    let mut parts = Vec::with_capacity(m as usize);
    for (j, w) in (0..m).zip(weights) {
        // A zero rate leaves only the j = 0 term.
        if w.is_zero() {
            continue;
        }
        let term = power_or_unit(source, m - 1 - j)?.tensor_product(&power_or_unit(target, j)?);
        parts.push((w, term));
    }
    let catalyst = weighted_direct_sum(&parts)?;
    let rate = match radicand.exact_root(m) {
        Some(root) => root.to_f64(),
        None => radicand.float_root(m),
    };
    Ok(CatalystConstruction {
        catalyst,
        copies: m,
        radicand,
        rate,
        weights_rounded,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct GuaranteeCheck<S> {
    /// `p_max(ψ1 ⊗ φ → ψ2 ⊗ φ)` for the constructed `φ`.
    #[serde(with = "serde_scalar")]
    pub catalyzed: S,
    /// `catalyzed^m >= radicand`; exact unless the weights were rounded, in
    /// which case a slack of 1e-9 applies.
    pub holds: bool,
}

impl<S: Scalar> CatalystConstruction<S> {
    pub fn verify(&self, source: &CompressedSpectrum<S>, target: &CompressedSpectrum<S>) -> GuaranteeCheck<S> {
        let catalyzed = p_catalyzed(source, target, &self.catalyst);
        let lhs = catalyzed.powi(self.copies);
        let holds = if self.weights_rounded {
            lhs.to_f64() >= self.radicand.to_f64() - CHECK_TOLERANCE
        } else {
            lhs.at_least(&self.radicand)
        };
        GuaranteeCheck { catalyzed, holds }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct ProtocolReport<S> {
    pub copies: u32,
    #[serde(with = "serde_count")]
    pub k: BigUint,
    #[serde(with = "serde_scalar")]
    pub gamma_k: S,
    /// `p_max(Φ_k → φ)`.
    #[serde(with = "serde_scalar")]
    pub p1: S,
    /// `p_max(ψ1 ⊗ φ → ψ2 ⊗ φ)`.
    #[serde(with = "serde_scalar")]
    pub catalyzed: S,
    /// `catalyzed^m`: reusing `φ` for each of the `m` copies.
    #[serde(with = "serde_scalar")]
    pub p2_lower_bound: S,
    /// `p_max(φ → Φ_k) = k · γ_k`.
    #[serde(with = "serde_scalar")]
    pub p3: S,
    #[serde(with = "serde_scalar")]
    pub product_bound: S,
    /// `p_max(ψ1^⊗m → ψ2^⊗m)`.
    #[serde(with = "serde_scalar")]
    pub m_copy_p_max: S,
    /// `p_max(ψ1^⊗m ⊗ Φ_k → ψ2^⊗m ⊗ Φ_k)`.
    #[serde(with = "serde_scalar")]
    pub with_max_entangled_p_max: S,
    /// `m_copy_p_max >= product_bound`.
    pub lower_bound_holds: bool,
    /// `with_max_entangled_p_max == m_copy_p_max`: `Φ_k` is inert as a catalyst.
    pub inert_identity_holds: bool,
}

impl<S> ProtocolReport<S> {
    pub fn consistent(&self) -> bool {
        self.lower_bound_holds && self.inert_identity_holds
    }
}

pub fn simulate_protocol<S: Scalar>(
    source: &CompressedSpectrum<S>,
    target: &CompressedSpectrum<S>,
    catalyst: &CompressedSpectrum<S>,
    m: u32,
) -> Result<ProtocolReport<S>> {
    if m == 0 {
        return Err(Error::CopyCountZero);
    }
    let k = catalyst.dimension().clone();
    let p3 = p_max_to_max_entangled(catalyst, &k)?;
    let p1 = p_max_from_max_entangled(&k, catalyst)?;
    let catalyzed = p_catalyzed(source, target, catalyst);
    let p2_lower_bound = catalyzed.powi(m);
    let product_bound = p1.clone() * &p2_lower_bound * &p3;

    let sm = source.tensor_power(m)?;
    let tm = target.tensor_power(m)?;
    let m_copy_p_max = p_max(&sm, &tm).p_max;
    let phi = maximally_entangled(&k)?;
    let with_max_entangled_p_max = p_max(&sm.tensor_product(&phi), &tm.tensor_product(&phi)).p_max;

    Ok(ProtocolReport {
        copies: m,
        gamma_k: catalyst.smallest_positive().clone(),
        lower_bound_holds: m_copy_p_max.at_least(&product_bound),
        inert_identity_holds: with_max_entangled_p_max.matches(&m_copy_p_max),
        k,
        p1,
        catalyzed,
        p2_lower_bound,
        p3,
        product_bound,
        m_copy_p_max,
        with_max_entangled_p_max,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct CatalystSearchResult<S> {
    pub best_catalyst: CompressedSpectrum<S>,
    #[serde(with = "serde_scalar")]
    pub best_p: S,
    /// `p_max` without any catalyst.
    #[serde(with = "serde_scalar")]
    pub baseline: S,
    pub k: usize,
    pub grid_resolution: u32,
    pub points_evaluated: usize,
}

/// Nonincreasing catalyst coefficient vectors on the search grid.
fn grid_points<S: Scalar>(k: usize, resolution: u32) -> Vec<Vec<S>> {
    let r = u64::from(resolution);
    if k == 2 {
        // γ = 1/2 + i/(2R), i = 0..R-1
        return (0..r)
            .map(|i| vec![S::from_ratio(r + i, 2 * r), S::from_ratio(r - i, 2 * r)])
            .collect();
    }
    fn nonincreasing(total: u32, parts: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            if total <= cap {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in (0..=cap.min(total)).rev() {
            prefix.push(first);
            nonincreasing(total - first, parts - 1, first, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    nonincreasing(resolution, k, resolution, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|p| p.into_iter().map(|n| S::from_ratio(u64::from(n), r)).collect())
        .collect()
}

fn lexicographic<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp_value(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Grid search over `k`-level catalysts. For `k = 2` the grid is
/// `γ ∈ {1/2 + i/(2R)}`; for `k = 3, 4` it is the ordered probability simplex
/// with denominators `R`. Ties go to the lexicographically smallest catalyst.
pub fn search_catalyst<S: Scalar>(
    source: &CompressedSpectrum<S>,
    target: &CompressedSpectrum<S>,
    k: usize,
    resolution: u32,
) -> Result<CatalystSearchResult<S>> {
    if !(2..=4).contains(&k) {
        return Err(Error::UnsupportedDimension { k });
    }
    if resolution < 2 {
        return Err(Error::InvalidGrid { resolution });
    }
    let points = grid_points::<S>(k, resolution);
    let scored: Vec<(Vec<S>, CompressedSpectrum<S>, S)> = points
        .into_par_iter()
        .map(|coefficients| {
            let catalyst = CompressedSpectrum::from_coefficients(coefficients.clone())?;
            let p = p_catalyzed(source, target, &catalyst);
            Ok((coefficients, catalyst, p))
        })
        .collect::<Result<_>>()?;
    let points_evaluated = scored.len();

    let mut best: Option<(Vec<S>, CompressedSpectrum<S>, S)> = None;
    for candidate in scored {
        let replace = match &best {
            None => true,
            Some((coeffs, _, p)) => match candidate.2.cmp_value(p) {
                Ordering::Greater => true,
                Ordering::Equal => lexicographic(&candidate.0, coeffs) == Ordering::Less,
                Ordering::Less => false,
            },
        };
        if replace {
            best = Some(candidate);
        }
    }
    let (_, best_catalyst, best_p) = best.expect("grid is never empty");
    Ok(CatalystSearchResult {
        best_catalyst,
        best_p,
        baseline: p_max(source, target).p_max,
        k,
        grid_resolution: resolution,
        points_evaluated,
    })
}
