//! Multiple-copy conversions.
//!
//! The per-copy rate of an `m`-copy conversion is the geometric average
//! `p_max(ψ1^⊗m → ψ2^⊗m)^(1/m)`; its supremum over `m` equals
//! [`closed_form_pe`]. All decisions (reaching the bound, clearing a threshold
//! `p`) compare the radicand `p_max(ψ1^⊗m → ψ2^⊗m)` against `bound^m` or
//! `p^m`, so they stay exact in exact mode. The root itself is only used for
//! display.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{serde_scalar, Scalar};
use crate::spectra::CompressedSpectrum;
use crate::vidal::{closed_form_pe, p_max};

/// Default upper limit on copy counts for small (dimension <= 6) sources.
pub const DEFAULT_COPY_CAP: u32 = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct MulticopyEntry<S> {
    pub copies: u32,
    /// `p_max` of the `copies`-fold instance.
    #[serde(with = "serde_scalar")]
    pub radicand: S,
    /// `radicand^(1/copies)`, for display.
    pub average: f64,
    pub source_blocks: usize,
    pub target_blocks: usize,
}

impl<S: Scalar> MulticopyEntry<S> {
    /// Whether this entry's per-copy rate is strictly above `other`'s,
    /// i.e. `r_a^{m_b} > r_b^{m_a}`.
    fn beats(&self, other: &Self) -> bool {
        let lhs = self.radicand.powi(other.copies);
        let rhs = other.radicand.powi(self.copies);
        lhs.cmp_value(&rhs) == Ordering::Greater
    }

    /// `rate >= p`, decided as `radicand >= p^copies`.
    pub fn clears(&self, p: &S) -> bool {
        self.radicand.at_least(&p.powi(self.copies))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct MulticopyTrace<S> {
    pub entries: Vec<MulticopyEntry<S>>,
    pub best_copies: u32,
    #[serde(with = "serde_scalar")]
    pub best_radicand: S,
    pub best_average: f64,
    #[serde(with = "serde_scalar")]
    pub closed_form_bound: S,
}

pub fn p_multicopy_avg<S: Scalar>(
    source: &CompressedSpectrum<S>,
    target: &CompressedSpectrum<S>,
    m: u32,
) -> Result<MulticopyEntry<S>> {
    let s = source.tensor_power(m)?;
    let t = target.tensor_power(m)?;
    let radicand = p_max(&s, &t).p_max;
    let average = match radicand.exact_root(m) {
        Some(root) => root.to_f64(),
        None => radicand.float_root(m),
    };
    Ok(MulticopyEntry {
        copies: m,
        radicand,
        average,
        source_blocks: s.block_count(),
        target_blocks: t.block_count(),
    })
}

/// Sweeps `m = 1..=m_max`, stopping once the closed-form bound is reached
/// (exactly, or within `early_stop_gap` on the averaged rate when the gap is
/// positive). Evaluation runs in parallel chunks; the trace is identical to a
/// sequential sweep.
pub fn estimate_pm<S: Scalar>(
    source: &CompressedSpectrum<S>,
    target: &CompressedSpectrum<S>,
    m_max: u32,
    early_stop_gap: f64,
) -> Result<MulticopyTrace<S>> {
    if m_max == 0 {
        return Err(Error::CopyCountZero);
    }
    if early_stop_gap.is_nan() || early_stop_gap < 0.0 {
        return Err(Error::InvalidGap { gap: early_stop_gap });
    }
    let bound = closed_form_pe(source, target);
    let bound_f64 = bound.to_f64();
    let reached = |e: &MulticopyEntry<S>| {
        e.radicand.at_least(&bound.powi(e.copies)) || (early_stop_gap > 0.0 && bound_f64 - e.average <= early_stop_gap)
    };

    let chunk = rayon::current_num_threads().max(1) as u32;
    let mut entries: Vec<MulticopyEntry<S>> = Vec::new();
    let mut start = 1;
    'sweep: while start <= m_max {
        let end = (start + chunk - 1).min(m_max);
        let batch: Vec<MulticopyEntry<S>> = (start..=end)
            .into_par_iter()
            .map(|m| p_multicopy_avg(source, target, m))
            .collect::<Result<_>>()?;
        for entry in batch {
            let stop = reached(&entry);
            entries.push(entry);
            if stop {
                break 'sweep;
            }
        }
        start = end + 1;
    }

    let best = entries
        .iter()
        .fold(None::<&MulticopyEntry<S>>, |best, e| match best {
            Some(b) if !e.beats(b) => Some(b),
            _ => Some(e),
        })
        .expect("at least one copy count evaluated")
        .clone();
    Ok(MulticopyTrace {
        best_copies: best.copies,
        best_radicand: best.radicand,
        best_average: best.average,
        closed_form_bound: bound,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", tag = "outcome", rename_all = "camelCase")]
pub enum FiniteCopyOutcome<S> {
    /// Smallest `m` whose per-copy rate is at least `p`.
    #[serde(rename_all = "camelCase")]
    Found {
        copies: u32,
        #[serde(with = "serde_scalar")]
        radicand: S,
        average: f64,
    },
    /// `p` equals the closed-form bound and no `m` up to `cap` reaches it;
    /// whether a larger `m` does is undecided.
    #[serde(rename_all = "camelCase")]
    BoundaryCase {
        cap: u32,
        #[serde(with = "serde_scalar")]
        bound: S,
    },
    /// `p` is below the bound, so some finite `m` works, but none up to `cap` does.
    #[serde(rename_all = "camelCase")]
    NotFoundWithinCap {
        cap: u32,
        #[serde(with = "serde_scalar")]
        bound: S,
    },
    /// `p` exceeds the bound: no number of copies can reach it.
    #[serde(rename_all = "camelCase")]
    Unattainable {
        #[serde(with = "serde_scalar")]
        bound: S,
    },
}

/// Smallest `m <= cap` whose per-copy rate reaches `p`.
///
/// Below the closed-form bound such an `m` always exists, so failing within
/// `cap` is reported as [`FiniteCopyOutcome::NotFoundWithinCap`]. At the bound
/// the scan still runs (the bound may be attained at finite `m`), and failure
/// is reported as [`FiniteCopyOutcome::BoundaryCase`]. Above it, no scan is
/// needed.
pub fn find_finite_m<S: Scalar>(
    source: &CompressedSpectrum<S>,
    target: &CompressedSpectrum<S>,
    p: &S,
    cap: u32,
) -> Result<FiniteCopyOutcome<S>> {
    if !p.is_finite_value() || *p <= S::zero() || p.cmp_value(&S::one()) == Ordering::Greater {
        return Err(Error::InvalidProbability { value: p.to_string() });
    }
    if cap == 0 {
        return Err(Error::CopyCountZero);
    }
    let bound = closed_form_pe(source, target);
    let boundary = p.matches(&bound);
    if !boundary && p.cmp_value(&bound) == Ordering::Greater {
        return Ok(FiniteCopyOutcome::Unattainable { bound });
    }
    for m in 1..=cap {
        let entry = p_multicopy_avg(source, target, m)?;
        if entry.clears(p) {
            return Ok(FiniteCopyOutcome::Found {
                copies: m,
                radicand: entry.radicand,
                average: entry.average,
            });
        }
    }
    Ok(if boundary {
        FiniteCopyOutcome::BoundaryCase { cap, bound }
    } else {
        FiniteCopyOutcome::NotFoundWithinCap { cap, bound }
    })
}
