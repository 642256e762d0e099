//! Optimal single-shot conversion probability between pure states.
//!
//! `p_max(ψ1 → ψ2) = min_l E_l(ψ1) / E_l(ψ2)` where `E_l` is the sum of the
//! Schmidt coefficients from position `l` on. Both spectra are zero-padded to
//! a common dimension; positions where the target tail vanishes impose no
//! constraint.
//!
//! On a run of positions where both spectra are constant, the ratio has the
//! form `(A - a·t) / (B - b·t)`, which is monotone in `t`. The minimum is
//! therefore attained at a block start or block end of one of the two spectra,
//! and the evaluation costs `O(blocks · log blocks)` regardless of dimension.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{serde_count, serde_scalar, Scalar};
use crate::spectra::CompressedSpectrum;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct ConversionReport<S> {
    #[serde(with = "serde_scalar")]
    pub p_max: S,
    /// 1-based position `l*` of the binding tail ratio (smallest on ties).
    #[serde(with = "serde_count")]
    pub argmin_position: BigUint,
    #[serde(with = "serde_scalar")]
    pub source_tail: S,
    #[serde(with = "serde_scalar")]
    pub target_tail: S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct TailSum<S> {
    #[serde(with = "serde_count")]
    pub position: BigUint,
    #[serde(with = "serde_scalar")]
    pub tail: S,
}

/// Tail sums of a compressed spectrum at arbitrary expanded positions.
struct TailProfile<'a, S> {
    spectrum: &'a CompressedSpectrum<S>,
    /// 1-based first position of each block.
    starts: Vec<BigUint>,
    /// Last position of each block.
    ends: Vec<BigUint>,
    /// Tail sum just past each block.
    after: Vec<S>,
}

impl<'a, S: Scalar> TailProfile<'a, S> {
    fn new(spectrum: &'a CompressedSpectrum<S>) -> Self {
        let blocks = spectrum.blocks();
        let mut starts = Vec::with_capacity(blocks.len());
        let mut ends = Vec::with_capacity(blocks.len());
        let mut next = BigUint::one();
        for b in blocks {
            let end = &next + &b.multiplicity - 1u32;
            starts.push(next);
            next = &end + 1u32;
            ends.push(end);
        }
        // Accumulate from the smallest block upwards.
        let mut after = vec![S::zero(); blocks.len()];
        for j in (0..blocks.len().saturating_sub(1)).rev() {
            let b = &blocks[j + 1];
            after[j] = after[j + 1].clone() + b.value.clone() * S::from_count(&b.multiplicity);
        }
        TailProfile {
            spectrum,
            starts,
            ends,
            after,
        }
    }

    fn rank(&self) -> &BigUint {
        self.ends.last().expect("spectrum has at least one block")
    }

    /// `E_position`; exactly one at position 1 and zero past the rank.
    fn tail_at(&self, position: &BigUint) -> S {
        if position.is_one() {
            return S::one();
        }
        if position > self.rank() {
            return S::zero();
        }
        let j = self.starts.partition_point(|s| s <= position) - 1;
        let remaining = &self.ends[j] - position + 1u32;
        self.spectrum.blocks()[j].value.clone() * S::from_count(&remaining) + &self.after[j]
    }

    fn boundaries(&self) -> impl Iterator<Item = &BigUint> {
        self.starts.iter().chain(self.ends.iter())
    }
}

/// Tail sums `E_l` at every block start and block end.
pub fn suffix_sums<S: Scalar>(spectrum: &CompressedSpectrum<S>) -> Vec<TailSum<S>> {
    let profile = TailProfile::new(spectrum);
    let mut positions: Vec<&BigUint> = profile.boundaries().collect();
    positions.sort();
    positions.dedup();
    positions
        .into_iter()
        .map(|p| TailSum {
            position: p.clone(),
            tail: profile.tail_at(p),
        })
        .collect()
}

pub fn p_max<S: Scalar>(source: &CompressedSpectrum<S>, target: &CompressedSpectrum<S>) -> ConversionReport<S> {
    let src = TailProfile::new(source);
    let tgt = TailProfile::new(target);

    // Schmidt rank cannot increase: the tail ratio is 0 / positive right after the source rank.
    if src.rank() < tgt.rank() {
        let position = src.rank() + 1u32;
        return ConversionReport {
            p_max: S::zero(),
            target_tail: tgt.tail_at(&position),
            argmin_position: position,
            source_tail: S::zero(),
        };
    }

    let limit = tgt.rank();
    let mut candidates: Vec<&BigUint> = src
        .boundaries()
        .chain(tgt.boundaries())
        .filter(|p| *p <= limit)
        .collect();
    candidates.sort();
    candidates.dedup();

    let mut best: Option<ConversionReport<S>> = None;
    for position in candidates {
        let source_tail = src.tail_at(position);
        let target_tail = tgt.tail_at(position);
        let ratio = source_tail.clone() / &target_tail;
        let better = match &best {
            None => true,
            Some(b) => ratio.cmp_value(&b.p_max) == Ordering::Less,
        };
        if better {
            best = Some(ConversionReport {
                p_max: ratio,
                argmin_position: position.clone(),
                source_tail,
                target_tail,
            });
        }
    }
    best.expect("position 1 is always a candidate")
}

/// Deterministic convertibility read off `p_max == 1`.
pub fn is_deterministic<S: Scalar>(source: &CompressedSpectrum<S>, target: &CompressedSpectrum<S>) -> bool {
    p_max(source, target).p_max.is_unit()
}

/// Majorization `source ≺ target`: every prefix sum of the source is at most
/// the matching prefix sum of the target. Walks the common refinement of both
/// block structures forwards; prefix differences are linear between
/// refinement points, so checking each segment end suffices.
pub fn is_majorized<S: Scalar>(source: &CompressedSpectrum<S>, target: &CompressedSpectrum<S>) -> bool {
    let mut a = source.blocks().iter().peekable();
    let mut b = target.blocks().iter().peekable();
    let mut left_a = a.peek().map(|x| x.multiplicity.clone()).unwrap_or_default();
    let mut left_b = b.peek().map(|x| x.multiplicity.clone()).unwrap_or_default();
    let mut prefix_a = S::zero();
    let mut prefix_b = S::zero();

    while a.peek().is_some() || b.peek().is_some() {
        let step = match (a.peek(), b.peek()) {
            (Some(_), Some(_)) => left_a.clone().min(left_b.clone()),
            (Some(_), None) => left_a.clone(),
            _ => left_b.clone(),
        };
        let count = S::from_count(&step);
        if let Some(x) = a.peek() {
            prefix_a = prefix_a + x.value.clone() * &count;
            left_a -= &step;
            if left_a.is_zero() {
                a.next();
                left_a = a.peek().map(|x| x.multiplicity.clone()).unwrap_or_default();
            }
        }
        if let Some(y) = b.peek() {
            prefix_b = prefix_b + y.value.clone() * &count;
            left_b -= &step;
            if left_b.is_zero() {
                b.next();
                left_b = b.peek().map(|y| y.multiplicity.clone()).unwrap_or_default();
            }
        }
        if !prefix_b.at_least(&prefix_a) {
            return false;
        }
    }
    true
}

/// `min{1, α_n / β_n}` with `α_n`, `β_n` the last coefficients after padding
/// both spectra to a common dimension and dropping shared trailing zeros.
/// This is the supremum of both the catalysed and the multiple-copy
/// conversion probabilities.
pub fn closed_form_pe<S: Scalar>(source: &CompressedSpectrum<S>, target: &CompressedSpectrum<S>) -> S {
    let rs = source.rank();
    let rt = target.rank();
    let alpha = if rs >= rt {
        source.smallest_positive().clone()
    } else {
        S::zero()
    };
    let beta = if rt >= rs {
        target.smallest_positive().clone()
    } else {
        S::zero()
    };
    if beta.is_zero() {
        return S::one();
    }
    if alpha.is_zero() {
        return S::zero();
    }
    let ratio = alpha / &beta;
    if ratio.cmp_value(&S::one()) == Ordering::Less {
        ratio
    } else {
        S::one()
    }
}
