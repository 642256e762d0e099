//! Brute-force reference implementations over fully expanded spectra.
//!
//! Nothing here touches block compression, segment endpoints or composition
//! enumeration, so a bug in those paths cannot hide behind the same bug here.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectra::SchmidtSpectrum;

pub const BRUTE_P_MAX_LIMIT: usize = 10_000;
pub const BRUTE_POWER_LIMIT: usize = 1_000_000;

/// Minimum tail ratio and the first position attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteConversion<S> {
    pub p_max: S,
    pub position: usize,
}

pub fn brute_p_max<S: Scalar>(source: &SchmidtSpectrum<S>, target: &SchmidtSpectrum<S>) -> Result<S> {
    brute_p_max_with_position(source, target).map(|c| c.p_max)
}

pub fn brute_p_max_with_position<S: Scalar>(
    source: &SchmidtSpectrum<S>,
    target: &SchmidtSpectrum<S>,
) -> Result<BruteConversion<S>> {
    let n = source.dimension().max(target.dimension());
    if n > BRUTE_P_MAX_LIMIT {
        return Err(Error::DimensionTooLarge {
            dimension: BigUint::from(n),
            limit: BRUTE_P_MAX_LIMIT as u64,
        });
    }
    let tails_a = padded_tails(source.coefficients(), n);
    let tails_b = padded_tails(target.coefficients(), n);

    let mut best: Option<BruteConversion<S>> = None;
    for l in 0..n {
        if tails_b[l].is_zero() {
            continue;
        }
        let ratio = tails_a[l].clone() / &tails_b[l];
        if best.as_ref().is_none_or(|b| ratio < b.p_max) {
            best = Some(BruteConversion {
                p_max: ratio,
                position: l + 1,
            });
        }
    }
    Ok(best.expect("a normalized target has a positive first tail"))
}

/// `tails[l] = Σ_{i >= l} c_i` over `c` padded with zeros to length `n`.
fn padded_tails<S: Scalar>(c: &[S], n: usize) -> Vec<S> {
    let mut tails = vec![S::zero(); n + 1];
    for i in (0..n).rev() {
        let c_i = c.get(i).cloned().unwrap_or_else(S::zero);
        tails[i] = tails[i + 1].clone() + c_i;
    }
    tails.truncate(n);
    tails
}

/// All `n^m` products of `m` coefficients, sorted nonincreasing.
pub fn brute_tensor_power<S: Scalar>(x: &SchmidtSpectrum<S>, m: u32) -> Result<SchmidtSpectrum<S>> {
    if m == 0 {
        return Err(Error::CopyCountZero);
    }
    let n = x.dimension();
    let size = n.checked_pow(m).filter(|&s| s <= BRUTE_POWER_LIMIT);
    let Some(size) = size else {
        return Err(Error::DimensionTooLarge {
            dimension: num_traits::pow(BigUint::from(n), m as usize),
            limit: BRUTE_POWER_LIMIT as u64,
        });
    };
    let mut products = vec![S::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(products.len() * n);
        for p in &products {
            for c in x.coefficients() {
                next.push(p.clone() * c);
            }
        }
        products = next;
    }
    debug_assert_eq!(products.len(), size);
    products.sort_by(|a, b| b.partial_cmp(a).expect("finite coefficients"));
    Ok(SchmidtSpectrum::from_sorted_unchecked(products))
}

/// All pairwise products of two expanded spectra, sorted nonincreasing.
pub fn brute_tensor_product<S: Scalar>(a: &SchmidtSpectrum<S>, b: &SchmidtSpectrum<S>) -> Result<SchmidtSpectrum<S>> {
    let size = a.dimension().saturating_mul(b.dimension());
    if size > BRUTE_POWER_LIMIT {
        return Err(Error::DimensionTooLarge {
            dimension: BigUint::from(a.dimension()) * b.dimension(),
            limit: BRUTE_POWER_LIMIT as u64,
        });
    }
    let mut products = Vec::with_capacity(size);
    for x in a.coefficients() {
        for y in b.coefficients() {
            products.push(x.clone() * y);
        }
    }
    products.sort_by(|a, b| b.partial_cmp(a).expect("finite coefficients"));
    Ok(SchmidtSpectrum::from_sorted_unchecked(products))
}
