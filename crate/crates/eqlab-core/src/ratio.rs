//! Arbitrary-precision rational scalars and parsing helpers.
//!
//! All exact computation in this crate is done over `Rat`
//! (= [`num_rational::BigRational`]). This module adds the small set of
//! constructors and conversions the rest of the crate needs, plus a parser
//! for the rational syntax accepted on the command line (`"3"`, `"-1/3"`,
//! `"-0.45"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// `n/d` as a `Rat`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a `Rat`.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Nearest `f64` to an exact rational.
///
/// Falls back to a sign-correct infinity if the value overflows `f64`,
/// which cannot happen for the magnitudes this crate produces.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Error raised when a string is not a valid rational literal.
#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

/// Parses `"p"`, `"p/q"`, or a finite decimal such as `"-0.45"` exactly.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let err = || ParseRatError(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_str = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            "0"
        } else {
            int_part
        };
        let whole = BigInt::from_str(int_str).map_err(|_| err())?;
        let frac = BigInt::from_str(frac_part).map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_rat = Rat::new(frac, scale);
        let whole_rat = Rat::from_integer(whole);
        return Ok(if negative {
            whole_rat - frac_rat
        } else {
            whole_rat + frac_rat
        });
    }
    BigInt::from_str(s).map(Rat::from_integer).map_err(|_| err())
}

/// Floor of an exact rational as a `BigInt`.
pub fn floor_int(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Exact distance from `x` to the nearest integer.
pub fn dist_to_nearest_int(x: &Rat) -> Rat {
    let f = x.fract().abs();
    let one_minus = Rat::one() - f.clone();
    if f <= one_minus {
        f
    } else {
        one_minus
    }
}

/// Serde adapter: `BigInt` as a decimal string (exact round-trip in JSON).
pub mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        BigInt::from_str(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Rat` as a `"p/q"` string (exact round-trip in JSON).
pub mod serde_rat {
    use super::{parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(serde::de::Error::custom)
    }
}
