//! Optimal conversion probabilities between bipartite pure entangled states,
//! computed from Schmidt spectra.
//!
//! - [`vidal`]: single-copy optimum `p_max`, majorization, and the closed-form
//!   supremum `min{1, α_n/β_n}`.
//! - [`multicopy`]: per-copy geometric average of `m`-copy conversions and the
//!   sweep over `m`.
//! - [`catalysis`]: catalysed conversion, catalyst construction from an
//!   `m`-copy protocol, the maximally-entangled simulation protocol, and a
//!   small grid search over catalysts.
//! - [`oracle`]: brute-force reference implementations on expanded spectra.
//!
//! All algorithms are generic over [`Scalar`]: exact rationals ([`Exact`]) by
//! default, or `f64`.

pub mod catalysis;
pub mod error;
pub mod multicopy;
pub mod oracle;
pub mod scalar;
pub mod spectra;
pub mod vidal;

pub use error::{Error, Result};
pub use scalar::{Exact, NumericMode, Scalar};
pub use spectra::{weighted_direct_sum, Block, CompressedSpectrum, SchmidtSpectrum};
pub use vidal::{closed_form_pe, is_deterministic, is_majorized, p_max, ConversionReport};
