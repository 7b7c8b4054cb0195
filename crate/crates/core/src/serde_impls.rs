//! Serde support. Points, generator indices and variables are written
//! 1-based, as in every external format.

use alloc::string::String;
use alloc::vec::Vec;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::identity::QuasiIdentity;
use crate::transformation::Transformation;

fn up(x: u64) -> u64 {
    x + 1
}

fn down<'de, D: Deserializer<'de>>(x: u64) -> Result<u64, D::Error> {
    x.checked_sub(1).ok_or_else(|| D::Error::custom("indices are 1-based, found 0"))
}

pub(crate) mod point {
    use super::*;

    pub fn serialize<S: Serializer>(p: &u32, s: S) -> Result<S::Ok, S::Error> {
        up(u64::from(*p)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u32, D::Error> {
        let x = down::<D>(u64::deserialize(d)?)?;
        u32::try_from(x).map_err(D::Error::custom)
    }
}

pub(crate) mod index {
    use super::*;

    pub fn serialize<S: Serializer>(i: &usize, s: S) -> Result<S::Ok, S::Error> {
        up(*i as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        let x = down::<D>(u64::deserialize(d)?)?;
        usize::try_from(x).map_err(D::Error::custom)
    }
}

pub(crate) mod points {
    use super::*;

    pub fn serialize<S: Serializer>(ps: &[u32], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(ps.iter().map(|&p| up(u64::from(p))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u32>, D::Error> {
        Vec::<u64>::deserialize(d)?
            .into_iter()
            .map(|x| u32::try_from(down::<D>(x)?).map_err(D::Error::custom))
            .collect()
    }
}

/// A generator word.
pub(crate) mod word {
    use super::*;

    pub fn serialize<S: Serializer>(w: &[usize], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(w.iter().map(|&i| up(i as u64)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        Vec::<u64>::deserialize(d)?
            .into_iter()
            .map(|x| usize::try_from(down::<D>(x)?).map_err(D::Error::custom))
            .collect()
    }
}

pub(crate) mod words {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "super::word")] Vec<usize>);

    pub fn serialize<S: Serializer>(ws: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(ws.iter().map(|w| W(w.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<usize>>, D::Error> {
        Ok(Vec::<W>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

impl Serialize for Transformation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        points::serialize(self.as_slice(), s)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Transformation::new(points::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct IdentityRepr {
    text: String,
    variables: usize,
    #[serde(with = "word")]
    idempotent: Vec<usize>,
    #[serde(with = "word")]
    lhs: Vec<usize>,
    #[serde(with = "word")]
    rhs: Vec<usize>,
}

impl Serialize for QuasiIdentity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IdentityRepr {
            text: alloc::format!("{self}"),
            variables: self.var_count(),
            idempotent: self.idempotent_vars(),
            lhs: self.lhs().to_vec(),
            rhs: self.rhs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiIdentity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IdentityRepr::deserialize(d)?;
        QuasiIdentity::new(r.variables, &r.idempotent, r.lhs, r.rhs).map_err(D::Error::custom)
    }
}
