//! Serde adapters that write element indices 1-based, as in all text I/O.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(i: &usize, s: S) -> Result<S::Ok, S::Error> {
    (i + 1).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
    let i = usize::deserialize(d)?;
    i.checked_sub(1).ok_or_else(|| serde::de::Error::custom("indices start at 1"))
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|i| i + 1).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        Vec::<usize>::deserialize(d)?
            .into_iter()
            .map(|i| i.checked_sub(1).ok_or_else(|| serde::de::Error::custom("indices start at 1")))
            .collect()
    }
}

pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(usize, usize)], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|&(a, b)| (a + 1, b + 1)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(usize, usize)>, D::Error> {
        Vec::<(usize, usize)>::deserialize(d)?
            .into_iter()
            .map(|(a, b)| match (a.checked_sub(1), b.checked_sub(1)) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(serde::de::Error::custom("indices start at 1")),
            })
            .collect()
    }
}

pub mod nested {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<usize>>, D::Error> {
        Vec::<Vec<usize>>::deserialize(d)?
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|i| i.checked_sub(1).ok_or_else(|| serde::de::Error::custom("indices start at 1")))
                    .collect()
            })
            .collect()
    }
}

pub mod opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<usize>>, D::Error> {
        Option::<Vec<usize>>::deserialize(d)?
            .map(|c| {
                c.into_iter()
                    .map(|i| i.checked_sub(1).ok_or_else(|| serde::de::Error::custom("indices start at 1")))
                    .collect()
            })
            .transpose()
    }
}
