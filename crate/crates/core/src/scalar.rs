//! Numeric carriers for probabilities.
//!
//! Every algorithm in this crate is generic over [`Scalar`], which has two
//! implementations:
//!
//! - [`Exact`] (`BigRational`): all arithmetic and comparisons are exact. This
//!   is the default mode; statements such as "the conversion succeeds with
//!   probability one" are decidable only here.
//! - `f64`: binary floating point, for fast sweeps. Values are merged into one
//!   block when they agree to a relative [`MERGE_EPSILON`], and threshold checks
//!   use the absolute [`CHECK_TOLERANCE`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational scalar.
pub type Exact = BigRational;

/// Relative tolerance under which two floating-point coefficients are the same block.
pub const MERGE_EPSILON: f64 = 1e-12;

/// Absolute slack for floating-point normalization and threshold checks.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Exact,
    Float,
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Exact => f.write_str("exact"),
            NumericMode::Float => f.write_str("float"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Wire form of a scalar: `{"num": "4", "den": "5"}` for exact values, a
/// plain JSON number for floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Exact { num: String, den: String },
    Float(f64),
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + 'static
{
    const MODE: NumericMode;

    fn from_ratio(num: u64, den: u64) -> Self;

    fn from_count(n: &BigUint) -> Self;

    /// Converts a binary float. Exact scalars take its exact binary value.
    fn from_f64(x: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Total order used for sorting coefficients.
    fn cmp_value(&self, other: &Self) -> Ordering;

    /// Block-merge equality: exact equality, or relative [`MERGE_EPSILON`] for floats.
    fn same_value(&self, other: &Self) -> bool;

    /// `self >= other`, with [`CHECK_TOLERANCE`] slack for floats.
    fn at_least(&self, other: &Self) -> bool;

    /// `self == other`, with [`CHECK_TOLERANCE`] slack for floats.
    fn matches(&self, other: &Self) -> bool {
        self.at_least(other) && other.at_least(self)
    }

    fn is_unit(&self) -> bool {
        self.matches(&Self::one())
    }

    /// The exact `n`-th root when one exists in this number system.
    fn exact_root(&self, n: u32) -> Option<Self>;

    /// `n`-th root evaluated in binary floating point.
    fn float_root(&self, n: u32) -> f64 {
        if self.is_one() {
            1.0
        } else {
            self.to_f64().powf(1.0 / f64::from(n))
        }
    }

    fn powi(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }

    fn is_finite_value(&self) -> bool;

    fn parse_literal(s: &str) -> Result<Self, ParseScalarError>;

    fn to_repr(&self) -> ScalarRepr;

    fn from_repr(repr: &ScalarRepr) -> Result<Self, ParseScalarError>;
}

impl Scalar for BigRational {
    const MODE: NumericMode = NumericMode::Exact;

    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_count(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()))
    }

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn same_value(&self, other: &Self) -> bool {
        self == other
    }

    fn at_least(&self, other: &Self) -> bool {
        self >= other
    }

    fn exact_root(&self, n: u32) -> Option<Self> {
        if n == 0 || self.is_negative() {
            return None;
        }
        let root_of = |x: &BigInt| {
            let r = x.nth_root(n);
            (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
        };
        let num = root_of(self.numer())?;
        let den = root_of(self.denom())?;
        Some(BigRational::new(num, den))
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn parse_literal(s: &str) -> Result<Self, ParseScalarError> {
        parse_exact(s)
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Exact {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
    }

    fn from_repr(repr: &ScalarRepr) -> Result<Self, ParseScalarError> {
        match repr {
            ScalarRepr::Exact { num, den } => {
                let n = BigInt::from_str(num).map_err(|_| ParseScalarError::Malformed(num.clone()))?;
                let d = BigInt::from_str(den).map_err(|_| ParseScalarError::Malformed(den.clone()))?;
                if d.is_zero() {
                    return Err(ParseScalarError::ZeroDenominator(format!("{num}/{den}")));
                }
                Ok(BigRational::new(n, d))
            }
            ScalarRepr::Float(x) => {
                BigRational::from_float(*x).ok_or_else(|| ParseScalarError::Malformed(x.to_string()))
            }
        }
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn from_count(n: &BigUint) -> Self {
        ToPrimitive::to_f64(n).unwrap_or(f64::INFINITY)
    }

    fn from_f64(x: f64) -> Option<Self> {
        Some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }

    fn same_value(&self, other: &Self) -> bool {
        (self - other).abs() <= MERGE_EPSILON * self.abs().max(other.abs())
    }

    fn at_least(&self, other: &Self) -> bool {
        *self >= other - CHECK_TOLERANCE
    }

    fn exact_root(&self, n: u32) -> Option<Self> {
        (n > 0 && *self >= 0.0).then(|| self.float_root(n))
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn parse_literal(s: &str) -> Result<Self, ParseScalarError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_f64(n)?;
                let d = parse_f64(d)?;
                if d == 0.0 {
                    return Err(ParseScalarError::ZeroDenominator(s.to_string()));
                }
                Ok(n / d)
            }
            None => parse_f64(s),
        }
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Float(*self)
    }

    fn from_repr(repr: &ScalarRepr) -> Result<Self, ParseScalarError> {
        match repr {
            ScalarRepr::Float(x) => Ok(*x),
            ScalarRepr::Exact { .. } => {
                let r = BigRational::from_repr(repr)?;
                Ok(Scalar::to_f64(&r))
            }
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, ParseScalarError> {
    let s = s.trim();
    // Reject "inf", "nan" and friends; only plain decimal literals are coefficients.
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c)) {
        return Err(ParseScalarError::Malformed(s.to_string()));
    }
    s.parse().map_err(|_| ParseScalarError::Malformed(s.to_string()))
}

/// Parses `"0.25"`, `"1e-3"`, `"2/5"` or `"0.4/1.01"` as an exact base-10 ratio.
pub fn parse_exact(s: &str) -> Result<BigRational, ParseScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_decimal(n)?;
            let d = parse_decimal(d)?;
            if d.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(s.to_string()));
            }
            Ok(n / d)
        }
        None => parse_decimal(s),
    }
}

fn parse_decimal(s: &str) -> Result<BigRational, ParseScalarError> {
    let s = s.trim();
    let malformed = || ParseScalarError::Malformed(s.to_string());
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => {
            let exp: i64 = body[i + 1..].parse().map_err(|_| malformed())?;
            (&body[..i], exp)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(&digits).map_err(|_| malformed())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let power = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * power)
    } else {
        BigRational::new(num, power)
    })
}

/// Human-readable rendering: `4/5 (0.8)` for exact values, the float itself otherwise.
pub fn render<S: Scalar>(x: &S) -> String {
    match S::MODE {
        NumericMode::Exact => {
            let text = x.to_string();
            if text.contains('/') {
                format!("{text} ({})", x.to_f64())
            } else {
                text
            }
        }
        NumericMode::Float => x.to_string(),
    }
}

/// `#[serde(with = "serde_scalar")]` for fields of a generic [`Scalar`] type.
pub mod serde_scalar {
    use super::{Scalar, ScalarRepr};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Scalar, Z: Serializer>(value: &S, ser: Z) -> Result<Z::Ok, Z::Error> {
        value.to_repr().serialize(ser)
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<S, D::Error> {
        let repr = ScalarRepr::deserialize(de)?;
        S::from_repr(&repr).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::super::{Scalar, ScalarRepr};
        use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Scalar, Z: Serializer>(values: &[S], ser: Z) -> Result<Z::Ok, Z::Error> {
            values.iter().map(Scalar::to_repr).collect::<Vec<_>>().serialize(ser)
        }

        pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<Vec<S>, D::Error> {
            Vec::<ScalarRepr>::deserialize(de)?
                .iter()
                .map(|r| S::from_repr(r).map_err(D::Error::custom))
                .collect()
        }
    }
}

/// Big integers travel as decimal strings so no JSON reader truncates them.
pub mod serde_count {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<Z: Serializer>(value: &BigUint, ser: Z) -> Result<Z::Ok, Z::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(de)?;
        BigUint::from_str(&s).map_err(D::Error::custom)
    }
}
