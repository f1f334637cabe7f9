use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::bidegree::Bidegree;
use super::monomial::{Factor, Monomial};
use crate::error::{Error, Result};

/// Position of a generator in the canonical order of its signature.
pub type GenId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorDecl {
    pub name: String,
    pub family: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<i64>,
    pub bidegree: Bidegree,
}

impl GeneratorDecl {
    /// A lone generator; its family is its name.
    pub fn new(name: impl Into<String>, bidegree: Bidegree) -> Self {
        let name = name.into();
        GeneratorDecl {
            family: name.clone(),
            name,
            indices: Vec::new(),
            bidegree,
        }
    }

    /// A member of an indexed family, named `family[i,j,..]`.
    pub fn indexed(family: impl Into<String>, indices: &[i64], bidegree: Bidegree) -> Self {
        let family = family.into();
        let name = indexed_name(&family, indices);
        GeneratorDecl {
            name,
            family,
            indices: indices.to_vec(),
            bidegree,
        }
    }

    fn order_key(&self) -> (&str, &[i64], &str) {
        (&self.family, &self.indices, &self.name)
    }
}

pub fn indexed_name(family: &str, indices: &[i64]) -> String {
    let idx: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    format!("{}[{}]", family, idx.join(","))
}

/// An ordered generator list. Generators are sorted by family name, then by
/// index tuple; this order fixes the canonical form of every monomial.
#[derive(Clone)]
pub struct Signature {
    gens: Vec<GeneratorDecl>,
    by_name: HashMap<String, GenId>,
    // (degree mod 2, parity bit) per generator
    koszul: Vec<(u32, u32)>,
}

pub fn make_signature(decls: Vec<GeneratorDecl>) -> Result<Arc<Signature>> {
    Signature::new(decls)
}

impl Signature {
    pub fn new(mut decls: Vec<GeneratorDecl>) -> Result<Arc<Signature>> {
        decls.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        let mut by_name = HashMap::with_capacity(decls.len());
        let mut arity: HashMap<&str, usize> = HashMap::new();
        for (i, d) in decls.iter().enumerate() {
            if by_name.insert(d.name.clone(), i as GenId).is_some() {
                return Err(Error::DuplicateName(d.name.clone()));
            }
            let a = *arity.entry(&d.family).or_insert(d.indices.len());
            if a != d.indices.len() {
                return Err(Error::Parse(format!(
                    "family `{}` mixes index arities {} and {}",
                    d.family,
                    a,
                    d.indices.len()
                )));
            }
        }
        let koszul = decls
            .iter()
            .map(|d| (d.bidegree.degree % 2, d.bidegree.parity.bit()))
            .collect();
        Ok(Arc::new(Signature {
            gens: decls,
            by_name,
            koszul,
        }))
    }

    pub fn empty() -> Arc<Signature> {
        Self::new(Vec::new()).expect("empty signature")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.gens
    }

    pub fn decl(&self, id: GenId) -> &GeneratorDecl {
        &self.gens[id as usize]
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id as usize].name
    }

    pub fn bidegree(&self, id: GenId) -> Bidegree {
        self.gens[id as usize].bidegree
    }

    pub fn id(&self, name: &str) -> Result<GenId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn indexed_id(&self, family: &str, indices: &[i64]) -> Result<GenId> {
        self.id(&indexed_name(family, indices))
    }

    /// Generators of a family, in canonical order.
    pub fn family(&self, family: &str) -> impl Iterator<Item = GenId> + '_ {
        let family = family.to_string();
        self.gens
            .iter()
            .enumerate()
            .filter(move |(_, d)| d.family == family)
            .map(|(i, _)| i as GenId)
    }

    pub fn squares_to_zero(&self, id: GenId) -> bool {
        let (d, p) = self.koszul[id as usize];
        (d + p) % 2 == 1
    }

    pub fn monomial_bidegree(&self, m: &Monomial) -> Bidegree {
        m.factors()
            .iter()
            .fold(Bidegree::ZERO, |acc, f| acc.plus(self.bidegree(f.gen).times(f.exp)))
    }

    /// Degree of `m` modulo 2; the sign the differential picks up crossing it.
    pub fn degree_parity(&self, m: &Monomial) -> u32 {
        m.factors()
            .iter()
            .map(|f| self.koszul[f.gen as usize].0 * f.exp)
            .sum::<u32>()
            % 2
    }

    /// Product of two canonical monomials: `None` if it vanishes, otherwise the
    /// canonical monomial and whether the Koszul sign is negative.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let af = a.factors();
        let bf = b.factors();
        if af.is_empty() {
            return Some((b.clone(), false));
        }
        if bf.is_empty() {
            return Some((a.clone(), false));
        }
        let (mut rest_d, mut rest_p) = (0u32, 0u32);
        for f in af {
            let (d, p) = self.koszul[f.gen as usize];
            rest_d += d * f.exp;
            rest_p += p * f.exp;
        }
        let mut out = Monomial::with_capacity(af.len() + bf.len());
        let mut sign = 0u32;
        let mut i = 0;
        for &Factor { gen: h, exp: l } in bf {
            while i < af.len() && af[i].gen < h {
                let (d, p) = self.koszul[af[i].gen as usize];
                rest_d -= d * af[i].exp;
                rest_p -= p * af[i].exp;
                out.push_raw(af[i]);
                i += 1;
            }
            let (dh, ph) = self.koszul[h as usize];
            if i < af.len() && af[i].gen == h {
                if (dh + ph) % 2 == 1 {
                    return None;
                }
                let k = af[i].exp;
                rest_d -= dh * k;
                rest_p -= ph * k;
                out.push_raw(Factor { gen: h, exp: k + l });
                i += 1;
            } else {
                out.push_raw(Factor { gen: h, exp: l });
            }
            sign += l * (dh * rest_d + ph * rest_p);
        }
        for f in &af[i..] {
            out.push_raw(*f);
        }
        Some((out, sign % 2 == 1))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = m
            .factors()
            .iter()
            .map(|f| {
                if f.exp == 1 {
                    self.name(f.gen).to_string()
                } else {
                    format!("{}^{}", self.name(f.gen), f.exp)
                }
            })
            .collect();
        parts.join("*")
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for Signature {}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.gens.iter().map(|g| format!("{} {}", g.name, g.bidegree)))
            .finish()
    }
}

/// Same signature, by identity or by structure.
pub fn same_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_dimensional_minkowski_signature() {
        let mut decls: Vec<_> = (0..11)
            .map(|a| GeneratorDecl::indexed("e", &[a], Bidegree::even(1)))
            .collect();
        decls.extend((1..=32).map(|a| GeneratorDecl::indexed("psi", &[a], Bidegree::odd(1))));
        let sig = make_signature(decls).unwrap();
        assert_eq!(sig.len(), 43);
        // numeric index order, not string order
        assert_eq!(sig.name(2), "e[2]");
        assert_eq!(sig.name(10), "e[10]");
        assert_eq!(sig.name(11), "psi[1]");
    }

    #[test]
    fn empty_and_duplicate() {
        assert_eq!(make_signature(vec![]).unwrap().len(), 0);
        let err = make_signature(vec![
            GeneratorDecl::new("x", Bidegree::even(2)),
            GeneratorDecl::new("x", Bidegree::even(2)),
        ]);
        assert!(matches!(err, Err(Error::DuplicateName(n)) if n == "x"));
    }

    #[test]
    fn order_is_input_independent() {
        let a = make_signature(vec![
            GeneratorDecl::new("h3", Bidegree::even(3)),
            GeneratorDecl::new("g4", Bidegree::even(4)),
        ])
        .unwrap();
        let b = make_signature(vec![
            GeneratorDecl::new("g4", Bidegree::even(4)),
            GeneratorDecl::new("h3", Bidegree::even(3)),
        ])
        .unwrap();
        assert_eq!(*a, *b);
        assert_eq!(a.name(0), "g4");
    }
}
