//! Schmidt spectra and their algebra.
//!
//! A bipartite pure state is modelled only by its ordered Schmidt
//! coefficients. Tensor powers of an `n`-level spectrum have at most
//! `C(n-1+m, n-1)` distinct values, so the working representation is
//! [`CompressedSpectrum`]: strictly decreasing `(value, multiplicity)` blocks
//! plus an explicit total dimension that accounts for trailing zeros.

pub mod combinatorics;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{serde_count, serde_scalar, NumericMode, Scalar, CHECK_TOLERANCE};
use combinatorics::{binomial_table, WeakCompositions};

/// Largest number of coefficients [`CompressedSpectrum::expand`] will materialize.
pub const EXPAND_LIMIT: u64 = 10_000_000;

/// Fully expanded, nonincreasing, normalized Schmidt coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> SchmidtSpectrum<S> {
    /// Validates, sorts and normalizes raw coefficients. Exact inputs may have
    /// any positive sum; float inputs must sum to 1 within 1e-9.
    pub fn new(raw: Vec<S>) -> Result<Self> {
        Ok(SchmidtSpectrum {
            coefficients: normalize(raw)?,
        })
    }

    /// Caller guarantees the coefficients are sorted, nonnegative and normalized.
    pub(crate) fn from_sorted_unchecked(coefficients: Vec<S>) -> Self {
        SchmidtSpectrum { coefficients }
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn compress(&self) -> CompressedSpectrum<S> {
        let pairs = self
            .coefficients
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| (c.clone(), BigUint::one()))
            .collect();
        CompressedSpectrum::canonicalize(pairs, BigUint::from(self.coefficients.len()))
    }
}

impl<S: Scalar> fmt::Display for SchmidtSpectrum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

fn normalize<S: Scalar>(raw: Vec<S>) -> Result<Vec<S>> {
    if raw.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    for (index, c) in raw.iter().enumerate() {
        if !c.is_finite_value() {
            return Err(Error::NonFinite {
                index,
                value: c.to_string(),
            });
        }
        if *c < S::zero() {
            return Err(Error::NegativeCoefficient {
                index,
                value: c.to_string(),
            });
        }
    }
    let sum = raw.iter().fold(S::zero(), |acc, c| acc + c);
    if sum.is_zero() {
        return Err(Error::NotNormalizable);
    }
    if S::MODE == NumericMode::Float && (sum.to_f64() - 1.0).abs() > CHECK_TOLERANCE {
        return Err(Error::NotNormalized { sum: sum.to_f64() });
    }
    let mut out: Vec<S> = if sum.is_one() {
        raw
    } else {
        raw.into_iter().map(|c| c / &sum).collect()
    };
    out.sort_by(|a, b| b.cmp_value(a));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Block<S> {
    #[serde(with = "serde_scalar")]
    pub value: S,
    #[serde(with = "serde_count")]
    pub multiplicity: BigUint,
}

/// Strictly decreasing positive blocks summing to one, embedded in
/// `dimension >= Σ multiplicity` levels (the rest are zero coefficients).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", try_from = "RawCompressed<S>")]
pub struct CompressedSpectrum<S> {
    blocks: Vec<Block<S>>,
    #[serde(with = "serde_count")]
    dimension: BigUint,
}

#[derive(Deserialize)]
#[serde(bound = "S: Scalar")]
struct RawCompressed<S> {
    blocks: Vec<Block<S>>,
    #[serde(with = "serde_count")]
    dimension: BigUint,
}

impl<S: Scalar> TryFrom<RawCompressed<S>> for CompressedSpectrum<S> {
    type Error = Error;

    fn try_from(raw: RawCompressed<S>) -> Result<Self> {
        CompressedSpectrum::from_blocks(raw.blocks, raw.dimension)
    }
}

impl<S: Scalar> CompressedSpectrum<S> {
    /// Sorts, merges and normalizes raw coefficients; the dimension is `raw.len()`.
    pub fn from_coefficients(raw: Vec<S>) -> Result<Self> {
        Ok(SchmidtSpectrum::new(raw)?.compress())
    }

    pub fn from_blocks(blocks: Vec<Block<S>>, dimension: BigUint) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        for (i, b) in blocks.iter().enumerate() {
            if !b.value.is_finite_value() || b.value <= S::zero() {
                return Err(Error::InvalidBlocks(format!(
                    "block {i} has non-positive value {}",
                    b.value
                )));
            }
            if b.multiplicity.is_zero() {
                return Err(Error::InvalidBlocks(format!("block {i} has zero multiplicity")));
            }
            if i > 0 {
                let prev = &blocks[i - 1].value;
                if prev.cmp_value(&b.value) != Ordering::Greater || prev.same_value(&b.value) {
                    return Err(Error::InvalidBlocks(format!(
                        "block {i} is not strictly below block {}",
                        i - 1
                    )));
                }
            }
        }
        let spectrum = CompressedSpectrum { blocks, dimension };
        if spectrum.rank() > spectrum.dimension {
            return Err(Error::InvalidBlocks(format!(
                "multiplicities sum to {} > dimension {}",
                spectrum.rank(),
                spectrum.dimension
            )));
        }
        let total = spectrum.total_weight();
        let normalized = match S::MODE {
            NumericMode::Exact => total.is_one(),
            NumericMode::Float => (total.to_f64() - 1.0).abs() <= CHECK_TOLERANCE,
        };
        if !normalized {
            return Err(Error::NotNormalized { sum: total.to_f64() });
        }
        Ok(spectrum)
    }

    /// The flat spectrum `(1/k, .., 1/k)`.
    pub fn uniform(k: &BigUint) -> Self {
        assert!(!k.is_zero(), "uniform spectrum needs k >= 1");
        CompressedSpectrum {
            blocks: vec![Block {
                value: S::one() / S::from_count(k),
                multiplicity: k.clone(),
            }],
            dimension: k.clone(),
        }
    }

    /// Sorts nonincreasing and merges equal values. Values must be positive.
    pub(crate) fn canonicalize(mut pairs: Vec<(S, BigUint)>, dimension: BigUint) -> Self {
        pairs.sort_by(|a, b| b.0.cmp_value(&a.0));
        let mut blocks: Vec<Block<S>> = Vec::with_capacity(pairs.len());
        for (value, multiplicity) in pairs {
            match blocks.last_mut() {
                Some(last) if last.value.same_value(&value) => last.multiplicity += multiplicity,
                _ => blocks.push(Block { value, multiplicity }),
            }
        }
        CompressedSpectrum { blocks, dimension }
    }

    pub fn blocks(&self) -> &[Block<S>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn dimension(&self) -> &BigUint {
        &self.dimension
    }

    /// Number of strictly positive coefficients.
    pub fn rank(&self) -> BigUint {
        self.blocks.iter().map(|b| &b.multiplicity).sum()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dimension
    }

    pub fn largest(&self) -> &S {
        &self.blocks[0].value
    }

    /// Least nonzero coefficient.
    pub fn smallest_positive(&self) -> &S {
        &self.blocks[self.blocks.len() - 1].value
    }

    /// `Σ value · multiplicity`; one up to rounding in float mode.
    pub fn total_weight(&self) -> S {
        self.blocks.iter().fold(S::zero(), |acc, b| {
            acc + b.value.clone() * S::from_count(&b.multiplicity)
        })
    }

    pub fn tensor_product(&self, other: &Self) -> Self {
        let mut pairs = Vec::with_capacity(self.blocks.len() * other.blocks.len());
        for a in &self.blocks {
            for b in &other.blocks {
                pairs.push((a.value.clone() * &b.value, &a.multiplicity * &b.multiplicity));
            }
        }
        Self::canonicalize(pairs, &self.dimension * &other.dimension)
    }

    /// `m`-fold tensor power by enumerating how many of the `m` factors take
    /// each distinct value: composition `(k_1..k_d)` contributes the value
    /// `Π v_i^{k_i}` with multiplicity `m!/(Π k_i!) · Π mult_i^{k_i}`.
    pub fn tensor_power(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::CopyCountZero);
        }
        let mu = m as usize;
        let value_powers: Vec<Vec<S>> = self
            .blocks
            .iter()
            .map(|b| successive_powers(S::one(), &b.value, mu))
            .collect();
        let mult_powers: Vec<Vec<BigUint>> = self
            .blocks
            .iter()
            .map(|b| successive_powers(BigUint::one(), &b.multiplicity, mu))
            .collect();
        let binom = binomial_table(m);

        let mut pairs = Vec::new();
        for comp in WeakCompositions::new(m, self.blocks.len()) {
            let mut value = S::one();
            let mut multiplicity = BigUint::one();
            let mut remaining = m as usize;
            for (i, &k) in comp.iter().enumerate() {
                let k = k as usize;
                if k == 0 {
                    continue;
                }
                value = value * &value_powers[i][k];
                multiplicity *= &binom[remaining][k];
                multiplicity *= &mult_powers[i][k];
                remaining -= k;
            }
            pairs.push((value, multiplicity));
        }
        Ok(Self::canonicalize(pairs, num_traits::pow(self.dimension.clone(), mu)))
    }

    /// Repeated pairwise products; kept as a cross-check for [`Self::tensor_power`].
    pub fn tensor_power_by_products(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::CopyCountZero);
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.tensor_product(self);
        }
        Ok(acc)
    }

    pub fn expand(&self) -> Result<SchmidtSpectrum<S>> {
        let n = self
            .dimension
            .to_u64()
            .filter(|&n| n <= EXPAND_LIMIT)
            .ok_or_else(|| Error::DimensionTooLarge {
                dimension: self.dimension.clone(),
                limit: EXPAND_LIMIT,
            })?;
        let mut out = Vec::with_capacity(n as usize);
        for b in &self.blocks {
            let count = b.multiplicity.to_usize().expect("rank bounded by dimension");
            out.extend(std::iter::repeat_n(b.value.clone(), count));
        }
        out.resize(n as usize, S::zero());
        Ok(SchmidtSpectrum::from_sorted_unchecked(out))
    }
}

fn successive_powers<T>(one: T, base: &T, max: usize) -> Vec<T>
where
    T: Clone + for<'a> std::ops::Mul<&'a T, Output = T>,
{
    let mut out = Vec::with_capacity(max + 1);
    out.push(one);
    for k in 0..max {
        let next = out[k].clone() * base;
        out.push(next);
    }
    out
}

/// `⊕_i w_i · spectrum_i`, renormalized to unit weight.
pub fn weighted_direct_sum<S: Scalar>(parts: &[(S, CompressedSpectrum<S>)]) -> Result<CompressedSpectrum<S>> {
    if parts.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    if let Some(index) = parts.iter().position(|(w, _)| !w.is_finite_value() || *w <= S::zero()) {
        return Err(Error::NonpositiveWeight { index });
    }
    let mut pairs = Vec::new();
    let mut dimension = BigUint::zero();
    for (w, spectrum) in parts {
        dimension += spectrum.dimension();
        for b in spectrum.blocks() {
            pairs.push((b.value.clone() * w, b.multiplicity.clone()));
        }
    }
    let total = pairs
        .iter()
        .fold(S::zero(), |acc, (v, n)| acc + v.clone() * S::from_count(n));
    for (v, _) in &mut pairs {
        *v = v.clone() / &total;
    }
    Ok(CompressedSpectrum::canonicalize(pairs, dimension))
}

impl<S: Scalar> fmt::Display for CompressedSpectrum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if b.multiplicity.is_one() {
                write!(f, "{}", b.value)?;
            } else {
                write!(f, "{} x{}", b.value, b.multiplicity)?;
            }
        }
        write!(f, "] (dimension {})", self.dimension)
    }
}
