//! Serialize big integers as decimal strings.

use num_bigint::{BigInt, BigUint};
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn uint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn factor_list<S: Serializer>(v: &[(BigUint, u32)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, e) in v {
        seq.serialize_element(&(p.to_string(), e))?;
    }
    seq.end()
}
