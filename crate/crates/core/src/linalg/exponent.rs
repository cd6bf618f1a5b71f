use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A summability exponent in `[1, ∞]`.
///
/// `∞` is an explicit variant rather than a large float so that reciprocal
/// arithmetic (`1/∞ = 0`) stays exact at the sentinel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);
    pub const INF: Exponent = Exponent::Infinity;

    /// Validates `p ≥ 1`. `f64::INFINITY` maps onto the sentinel.
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() {
            return Err(Error::Parameter("exponent is NaN".into()));
        }
        if p == f64::INFINITY {
            return Ok(Exponent::Infinity);
        }
        if p < 1.0 {
            return Err(Error::Parameter(format!("exponent {p} is below 1")));
        }
        Ok(Exponent::Finite(p))
    }

    /// Builds the exponent whose reciprocal is `inv`, for `inv ∈ [0, 1]`.
    pub fn from_reciprocal(inv: f64) -> Result<Self> {
        if !(0.0..=1.0 + 1e-15).contains(&inv) {
            return Err(Error::Parameter(format!("reciprocal exponent {inv} outside [0, 1]")));
        }
        if inv == 0.0 {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite((1.0 / inv).max(1.0)))
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hölder conjugate `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::ONE,
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// `2p`, used for the S_{2p} constraint sets of vector-valued norms.
    pub fn doubled(self) -> Self {
        match self {
            Exponent::Finite(p) => Exponent::Finite(2.0 * p),
            Exponent::Infinity => Exponent::Infinity,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The value as a float; `∞` becomes `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Ten decimals hide roundoff from conjugation, e.g. (4/3)' = 4.
            Exponent::Finite(p) => {
                let s = format!("{p:.10}");
                write!(f, "{}", s.trim_end_matches('0').trim_end_matches('.'))
            }
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

fn parse_extended(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "+inf" | "∞" => return Ok(f64::INFINITY),
        _ => {}
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: f64 = num.trim().parse().map_err(|_| format!("bad number `{s}`"))?;
        let den: f64 = den.trim().parse().map_err(|_| format!("bad number `{s}`"))?;
        return Ok(num / den);
    }
    t.parse().map_err(|_| format!("bad number `{s}`"))
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts decimals, fractions such as `4/3`, and `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_extended(s).map_err(Error::Parameter)?;
        Exponent::new(v)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExtReal(self.value()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = ExtReal::deserialize(deserializer)?;
        Exponent::new(v.0).map_err(de::Error::custom)
    }
}

/// A real number that may be `±∞`; serialises infinities as the strings
/// `"inf"` / `"-inf"` since JSON has no literal for them.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ExtReal(pub f64);

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            serializer.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtReal, E> {
                if v.trim().eq_ignore_ascii_case("-inf") {
                    return Ok(ExtReal(f64::NEG_INFINITY));
                }
                parse_extended(v).map(ExtReal).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_extended(s).map(ExtReal).map_err(Error::Parameter)
    }
}
