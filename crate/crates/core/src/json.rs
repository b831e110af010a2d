//! JSON forms of endpoints and interval sets. Exact quantities travel as strings.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::interval::{format_rational, parse_rational, Endpoint, IntervalSet, DEFAULT_PRECISION_BITS};

/// Serde adapter writing a rational as an exact decimal or `"p/q"` string.
pub mod ratstr {
    use super::*;
    use serde::{de::Error as _, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointJson {
    pub rat: String,
    #[serde(default)]
    pub irr: Option<String>,
    /// Working precision of the irrational part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bits: Option<u32>,
}

impl EndpointJson {
    pub fn from_endpoint(e: &Endpoint) -> Self {
        let (rat, irr) = e.to_strings();
        EndpointJson { rat, irr, bits: e.precision_bits() }
    }

    pub fn to_endpoint(&self, bits: u32) -> Result<Endpoint> {
        Endpoint::from_strings(&self.rat, self.irr.as_deref(), self.bits.unwrap_or(bits))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub left: EndpointJson,
    pub right: EndpointJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSetJson {
    pub intervals: Vec<IntervalJson>,
}

impl IntervalSetJson {
    pub fn from_set(s: &IntervalSet) -> Self {
        IntervalSetJson {
            intervals: s
                .intervals()
                .iter()
                .map(|iv| IntervalJson {
                    left: EndpointJson::from_endpoint(&iv.left),
                    right: EndpointJson::from_endpoint(&iv.right),
                })
                .collect(),
        }
    }

    /// Endpoint pairs in input order, without normalization.
    pub fn pairs(&self, bits: u32) -> Result<Vec<(Endpoint, Endpoint)>> {
        self.intervals
            .iter()
            .map(|iv| Ok((iv.left.to_endpoint(bits)?, iv.right.to_endpoint(bits)?)))
            .collect()
    }

    pub fn to_set(&self, bits: u32) -> Result<IntervalSet> {
        IntervalSet::from_pairs(self.pairs(bits)?)
    }
}

impl Serialize for Endpoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EndpointJson::from_endpoint(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    /// Reads the irrational part exactly. Without an explicit `bits` field the
    /// precision is inferred from a dyadic denominator when there is one.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = EndpointJson::deserialize(d)?;
        let rational = parse_rational(&j.rat).map_err(D::Error::custom)?;
        let Some(irr) = j.irr else {
            return Ok(Endpoint::rational(rational));
        };
        let approx = parse_rational(&irr).map_err(D::Error::custom)?;
        let den = approx.denom();
        let dyadic = (den & (den - num_bigint::BigInt::from(1))) == num_bigint::BigInt::from(0);
        let bits = if let Some(bits) = j.bits {
            bits
        } else if dyadic { (den.bits() as u32).saturating_sub(1).max(DEFAULT_PRECISION_BITS) } else { DEFAULT_PRECISION_BITS };
        Ok(Endpoint::with_irrational(rational, approx, bits))
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalSetJson::from_set(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            intervals: Vec<RawInterval>,
        }
        #[derive(Deserialize)]
        struct RawInterval {
            left: Endpoint,
            right: Endpoint,
        }
        let raw = Raw::deserialize(d)?;
        IntervalSet::from_pairs(raw.intervals.into_iter().map(|iv| (iv.left, iv.right)).collect()).map_err(D::Error::custom)
    }
}
