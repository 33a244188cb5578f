//! Lossless JSON form for big integers: a JSON number when the value fits
//! in `i64`, otherwise a decimal string.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(n.to_string()),
        }
    }
}

impl IntRepr {
    pub(crate) fn into_bigint(self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

/// `#[serde(with = "posbounds_core::numeric::bigint")]` helper.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::from(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?
            .into_bigint()
            .map_err(serde::de::Error::custom)
    }
}

/// Same as [`bigint`] for `Option<BigInt>`.
pub mod opt_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        n.as_ref().map(IntRepr::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<IntRepr>::deserialize(d)?
            .map(IntRepr::into_bigint)
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

/// Same as [`bigint`] for maps with big-integer values.
pub mod bigint_map {
    use super::*;
    use std::collections::BTreeMap;

    pub fn serialize<K, S>(m: &BTreeMap<K, BigInt>, s: S) -> Result<S::Ok, S::Error>
    where
        K: Serialize + Ord,
        S: Serializer,
    {
        let conv: BTreeMap<&K, IntRepr> = m.iter().map(|(k, v)| (k, IntRepr::from(v))).collect();
        conv.serialize(s)
    }

    pub fn deserialize<'de, K, D>(d: D) -> Result<BTreeMap<K, BigInt>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        D: Deserializer<'de>,
    {
        BTreeMap::<K, IntRepr>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| v.into_bigint().map(|v| (k, v)))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}
