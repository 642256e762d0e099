use num_bigint::BigUint;
use thiserror::Error;

use crate::scalar::ParseScalarError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient #{index} is negative: {value}")]
    NegativeCoefficient { index: usize, value: String },
    #[error("coefficient #{index} is not a finite number: {value}")]
    NonFinite { index: usize, value: String },
    #[error("spectrum has no coefficients")]
    EmptySpectrum,
    #[error("all coefficients are zero; the spectrum cannot be normalized")]
    NotNormalizable,
    #[error("coefficients sum to {sum}, which is not within 1e-9 of 1")]
    NotNormalized { sum: f64 },
    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),
    #[error("copy count must be at least 1")]
    CopyCountZero,
    #[error("catalyst construction needs at least 2 copies, got {m}")]
    CopyCountTooSmall { m: u32 },
    #[error("weight #{index} is not strictly positive")]
    NonpositiveWeight { index: usize },
    #[error("dimension {dimension} exceeds the limit of {limit}")]
    DimensionTooLarge { dimension: BigUint, limit: u64 },
    #[error("target Schmidt rank {rank} exceeds the maximally entangled dimension {k}")]
    RankExceedsK { rank: BigUint, k: BigUint },
    #[error("catalyst has a zero Schmidt coefficient (rank {rank} < dimension {dimension})")]
    RankDeficientCatalyst { rank: BigUint, dimension: BigUint },
    #[error("catalyst dimension {dimension} does not match k = {k}")]
    CatalystDimensionMismatch { k: BigUint, dimension: BigUint },
    #[error("catalyst search supports k in {{2, 3, 4}}, got {k}")]
    UnsupportedDimension { k: usize },
    #[error("grid resolution must be at least 2, got {resolution}")]
    InvalidGrid { resolution: u32 },
    #[error("probability must lie in (0, 1], got {value}")]
    InvalidProbability { value: String },
    #[error("early-stop gap must be a nonnegative number, got {gap}")]
    InvalidGap { gap: f64 },
    #[error("maximally entangled state needs k >= 1")]
    ZeroDimension,
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Parse(#[from] ParseScalarError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
