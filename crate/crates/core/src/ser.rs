//! Serde adapters that expose internal zero-based indices as one-based
//! values, matching the vertex numbering used by every text format and
//! report this crate emits.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub(crate) mod index {
    use super::*;

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(*v as u64 + 1)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        let raw = u64::deserialize(d)?;
        if raw == 0 {
            return Err(D::Error::custom("indices are one-based; got 0"));
        }
        Ok((raw - 1) as usize)
    }
}

pub(crate) mod index_pair {
    use super::*;

    pub fn serialize<S: Serializer>(v: &(usize, usize), s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&(v.0 as u64 + 1, v.1 as u64 + 1), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(usize, usize), D::Error> {
        let (a, b) = <(u64, u64)>::deserialize(d)?;
        if a == 0 || b == 0 {
            return Err(D::Error::custom("indices are one-based; got 0"));
        }
        Ok(((a - 1) as usize, (b - 1) as usize))
    }
}

pub(crate) mod index_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&v.iter().map(|&x| x as u64 + 1).collect::<Vec<_>>(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let raw = Vec::<u64>::deserialize(d)?;
        raw.into_iter()
            .map(|x| {
                if x == 0 {
                    Err(D::Error::custom("indices are one-based; got 0"))
                } else {
                    Ok((x - 1) as usize)
                }
            })
            .collect()
    }
}
