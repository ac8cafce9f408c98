//! Scalar field abstraction.
//!
//! All class computations are written against [`Scalar`]. The exact
//! instantiation [`Rational`] is what certificates and reports use; `f64`
//! is available for quick numerical cross-checks and `Ratio<i64>` for
//! small exact experiments where overflow is not a concern.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational.
pub type Rational = BigRational;

pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Equality up to the representation's precision (exact for rationals).
    fn same(&self, other: &Self) -> bool;

    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for f64 {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn same(&self, other: &Self) -> bool {
        let scale = 1.0_f64.max(self.abs()).max(other.abs());
        (self - other).abs() <= 1e-9 * scale
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

/// Canonical `p/q` rendering (`p` when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p/q` or `p`. Decimal and exponent notation are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational of the form p/q: {text:?}"));
    let ok_int = |s: &str| {
        let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    if !ok_int(n) || !ok_int(d) || d.starts_with('-') {
        return Err(bad());
    }
    let numer = BigInt::from_str_radix(n.trim_start_matches('+'), 10).map_err(|_| bad())?;
    let denom = BigInt::from_str_radix(d.trim_start_matches('+'), 10).map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Decimal approximation with six significant digits, for human-readable output only.
pub fn decimal_hint<T: Scalar>(x: &T) -> String {
    let v = x.to_f64_lossy();
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}
