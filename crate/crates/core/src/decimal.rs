//! Serde adapters writing naturals as decimal strings.

use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serializer};

use crate::arith::Natural;

pub fn serialize<S: Serializer>(n: &Natural, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Natural, D::Error> {
    let text = String::deserialize(d)?;
    parse(&text).map_err(de::Error::custom)
}

/// Strict decimal parser: ASCII digits only, no sign, no whitespace.
pub fn parse(text: &str) -> Result<Natural, String> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal natural: {text:?}"));
    }
    Natural::from_str(text).map_err(|e| e.to_string())
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<Natural>, s: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Natural>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|text| super::parse(&text).map_err(de::Error::custom))
            .transpose()
    }
}
