use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use super::element::Element;
use super::signature::Signature;
use super::Q;
use crate::error::{Error, Result};

/// Wire form of one term: generator names with exponents, in canonical
/// order, and the coefficient as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<(String, u32)>,
    pub coeff: String,
}

pub fn format_q(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl Element {
    pub fn to_terms_json(&self) -> Vec<TermJson> {
        let sig = self.signature();
        self.terms()
            .iter()
            .map(|(m, c)| TermJson {
                monomial: m
                    .factors()
                    .iter()
                    .map(|f| (sig.name(f.gen).to_string(), f.exp))
                    .collect(),
                coeff: format_q(c),
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_terms_json()).expect("terms serialize")
    }

    pub fn from_terms_json(sig: &Arc<Signature>, terms: &[TermJson]) -> Result<Element> {
        let mut parts = Vec::with_capacity(terms.len());
        for t in terms {
            let raw: Vec<(&str, u32)> = t.monomial.iter().map(|(n, e)| (n.as_str(), *e)).collect();
            parts.push(Element::normalize(sig, &raw, parse_q(&t.coeff)?)?);
        }
        let mut out = Element::zero(sig);
        for p in parts {
            out = out.try_add(&p)?;
        }
        Ok(out)
    }

    pub fn from_json(sig: &Arc<Signature>, value: &serde_json::Value) -> Result<Element> {
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())?;
        Self::from_terms_json(sig, &terms)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.to_terms_json();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for t in &terms {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}
