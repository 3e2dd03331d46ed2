//! Exact rational helpers: parsing, formatting and serde glue.
//!
//! Rationals cross every external interface as strings of the form `p/q`
//! (or bare `p` when the denominator is 1), never as floats.

use num_rational::Rational64;
use num_traits::Zero;

/// Parses a rational from `p` or `p/q` text. Rejects zero denominators and
/// anything that is not a pair of decimal integers.
pub fn parse_rational(text: &str) -> Result<Rational64, ParseRationalError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: i64 = num
        .parse()
        .map_err(|_| ParseRationalError(text.to_owned()))?;
    let denom: i64 = match den {
        Some(d) => d.parse().map_err(|_| ParseRationalError(text.to_owned()))?,
        None => 1,
    };
    if denom == 0 {
        return Err(ParseRationalError(text.to_owned()));
    }
    Ok(Rational64::new(numer, denom))
}

/// Formats a rational as `p/q`, or bare `p` when the denominator is 1.
pub fn format_rational(value: &Rational64) -> String {
    value.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational of the form p or p/q: {0:?}")]
pub struct ParseRationalError(pub String);

/// Serde adapter serializing `Rational64` as a `p/q` string.
pub mod serde_ratio {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational64, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational64, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational64>`: `p/q` string or `null`.
pub mod serde_ratio_opt {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational64>, ser: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => ser.serialize_some(&format_rational(v)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Rational64>, D::Error> {
        let text = Option::<String>::deserialize(de)?;
        text.map(|t| parse_rational(&t).map_err(de::Error::custom))
            .transpose()
    }
}

/// Smallest integer strictly or weakly above a rational bound.
pub(crate) fn int_lower_bound(bound: Rational64, strict: bool) -> i64 {
    let f = bound.floor().to_integer();
    if bound.fract().is_zero() {
        if strict {
            f + 1
        } else {
            f
        }
    } else {
        f + 1
    }
}

/// Largest integer strictly or weakly below a rational bound.
pub(crate) fn int_upper_bound(bound: Rational64, strict: bool) -> i64 {
    let c = bound.ceil().to_integer();
    if bound.fract().is_zero() {
        if strict {
            c - 1
        } else {
            c
        }
    } else {
        c - 1
    }
}
