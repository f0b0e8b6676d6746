//! Exact non-negative weights and the extended distance type.
//!
//! Every weight is an exact rational so density and distance comparisons
//! never suffer rounding. Files carry decimals with at most six fractional
//! digits, or an explicit `p/q` fraction.

use std::fmt;
use std::ops::Add;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational used for weights, densities and distances.
pub type Rational = BigRational;

/// Maximum number of fractional decimal digits accepted in input files.
pub const MAX_DECIMAL_DIGITS: usize = 6;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses a non-negative weight written as an integer, a decimal with at
/// most six fractional digits, or a fraction `p/q`.
pub fn parse_weight(text: &str) -> std::result::Result<Rational, String> {
    if text.starts_with('-') {
        return Err(format!("negative weight `{text}`"));
    }
    if let Some((numer, denom)) = text.split_once('/') {
        let numer: BigInt = parse_digits(numer, text)?;
        let denom: BigInt = parse_digits(denom, text)?;
        if denom.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        return Ok(Rational::new(numer, denom));
    }
    let (whole, frac) = match text.split_once('.') {
        Some((w, f)) => (w, f),
        None => (text, ""),
    };
    if frac.len() > MAX_DECIMAL_DIGITS {
        return Err(format!(
            "weight `{text}` has more than {MAX_DECIMAL_DIGITS} decimal digits"
        ));
    }
    if whole.is_empty() && frac.is_empty() {
        return Err(format!("malformed weight `{text}`"));
    }
    let whole: BigInt = if whole.is_empty() {
        BigInt::zero()
    } else {
        parse_digits(whole, text)?
    };
    let mut value = Rational::from_integer(whole);
    if !frac.is_empty() {
        let digits: BigInt = parse_digits(frac, text)?;
        let scale = num::pow(BigInt::from(10u32), frac.len());
        value += Rational::new(digits, scale);
    }
    Ok(value)
}

fn parse_digits(part: &str, whole: &str) -> std::result::Result<BigInt, String> {
    if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed weight `{whole}`"));
    }
    part.parse::<BigInt>()
        .map_err(|_| format!("malformed weight `{whole}`"))
}

/// Renders a weight so that [`parse_weight`] reads it back exactly: an
/// integer, a decimal when the value has a short exact expansion, or `p/q`.
pub fn format_weight(value: &Rational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let scale = num::pow(BigInt::from(10u32), MAX_DECIMAL_DIGITS);
    let scaled = value * Rational::from_integer(scale.clone());
    if scaled.is_integer() {
        let digits = scaled.numer().to_string();
        let digits = format!("{:0>width$}", digits, width = MAX_DECIMAL_DIGITS + 1);
        let (whole, frac) = digits.split_at(digits.len() - MAX_DECIMAL_DIGITS);
        return format!("{whole}.{}", frac.trim_end_matches('0'));
    }
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Converts a batch of non-negative rationals to integers sharing one
/// common denominator. Returns the integers and that denominator, or
/// `None` when the result does not fit in `i128`.
pub(crate) fn scale_to_integers(values: &[&Rational]) -> Option<(Vec<i128>, BigInt)> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let scaled = values
        .iter()
        .map(|v| (v.numer() * (&lcm / v.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some((scaled, lcm))
}

/// A shortest-path length; `Infinite` marks an unreachable pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(Rational),
    Infinite,
}

impl Distance {
    pub fn zero() -> Self {
        Distance::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Distance::Finite(v) => Some(v),
            Distance::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Finite(v) => to_f64(v),
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl Add<&Rational> for &Distance {
    type Output = Distance;

    fn add(self, rhs: &Rational) -> Distance {
        match self {
            Distance::Finite(v) => Distance::Finite(v + rhs),
            Distance::Infinite => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(v) => f.write_str(&format_weight(v)),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

pub(crate) fn ensure_non_negative(value: &Rational, what: &str) -> Result<()> {
    if value.is_negative() {
        return Err(Error::domain(format!("negative {what} weight {value}")));
    }
    Ok(())
}
