//! Semifree differential graded commutative algebras: a free bigraded
//! commutative algebra with a degree-(1, even) derivation fixed by its values
//! on generators.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::element::{accumulate, merge_accumulators, Accumulator};
use crate::graded::{Bidegree, Element, GenId, GeneratorDecl, Monomial, Signature, TermJson, Q};
use crate::report::Report;

const PAR_TERMS: usize = 256;

#[derive(Clone, Debug)]
pub struct SemifreeDgca {
    sig: Arc<Signature>,
    diff: Vec<Element>,
}

#[derive(Serialize)]
struct DgcaJson<'a> {
    generators: &'a [GeneratorDecl],
    differential: Vec<(String, Vec<TermJson>)>,
}

fn check_image(sig: &Signature, id: GenId, image: &Element, shift: i32) -> Result<()> {
    let decl = sig.decl(id);
    let expected = decl
        .bidegree
        .shifted(shift)
        .ok_or_else(|| Error::BidegreeMismatch {
            generator: decl.name.clone(),
            expected: "a nonnegative degree".to_string(),
            found: format!("shift {shift} of {}", decl.bidegree),
        })?;
    if image.is_zero() {
        return Ok(());
    }
    let bidegrees = image.bidegrees();
    if bidegrees.len() > 1 {
        return Err(Error::InhomogeneousImage {
            generator: decl.name.clone(),
        });
    }
    let found = *bidegrees.iter().next().expect("nonzero");
    if found != expected {
        return Err(Error::BidegreeMismatch {
            generator: decl.name.clone(),
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(())
}

/// Homogeneity check for a generator image under a map that shifts degree.
pub(crate) fn check_generator_image(
    sig: &Signature,
    id: GenId,
    image: &Element,
    shift: i32,
) -> Result<()> {
    check_image(sig, id, image, shift)
}

pub fn make_dgca(sig: Arc<Signature>, images: Vec<(&str, Element)>) -> Result<SemifreeDgca> {
    SemifreeDgca::new(sig, images)
}

impl SemifreeDgca {
    /// Generators not listed in `images` are closed.
    pub fn new(sig: Arc<Signature>, images: Vec<(&str, Element)>) -> Result<Self> {
        let mut diff = vec![Element::zero(&sig); sig.len()];
        for (name, img) in images {
            let id = sig.id(name)?;
            let img = if Arc::ptr_eq(img.signature(), &sig) {
                img
            } else {
                img.transport(&sig)?
            };
            check_image(&sig, id, &img, 1)?;
            diff[id as usize] = img;
        }
        Ok(SemifreeDgca { sig, diff })
    }

    /// Images given per generator id, in signature order.
    pub fn from_images(sig: Arc<Signature>, diff: Vec<Element>) -> Result<Self> {
        assert_eq!(sig.len(), diff.len());
        for (i, img) in diff.iter().enumerate() {
            check_image(&sig, i as GenId, img, 1)?;
        }
        Ok(SemifreeDgca { sig, diff })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn d_gen(&self, id: GenId) -> &Element {
        &self.diff[id as usize]
    }

    pub fn d_of(&self, name: &str) -> Result<&Element> {
        Ok(self.d_gen(self.sig.id(name)?))
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        Element::generator(&self.sig, name)
    }

    /// Extend d to all elements by the graded Leibniz rule: crossing a factor
    /// of degree `n` costs `(-1)^n`.
    pub fn apply_d(&self, x: &Element) -> Result<Element> {
        if !crate::graded::same_signature(x.signature(), &self.sig) {
            return Err(Error::SignatureMismatch);
        }
        let terms = x.terms();
        let acc = if terms.len() < PAR_TERMS {
            let mut acc = Accumulator::default();
            for (m, c) in terms {
                self.d_term_into(m, c, &mut acc);
            }
            acc
        } else {
            terms
                .par_chunks(32)
                .fold(Accumulator::default, |mut acc, chunk| {
                    for (m, c) in chunk {
                        self.d_term_into(m, c, &mut acc);
                    }
                    acc
                })
                .reduce(Accumulator::default, merge_accumulators)
        };
        Ok(Element::from_accumulator(&self.sig, acc))
    }

    fn d_term_into(&self, m: &Monomial, c: &Q, acc: &mut Accumulator) {
        for pos in 0..m.length() {
            let (prefix, g, suffix) = m.split_at_flat(pos);
            let dg = &self.diff[g as usize];
            if dg.is_zero() {
                continue;
            }
            let negative = self.sig.degree_parity(&prefix) == 1;
            for (t, tc) in dg.terms() {
                let Some((pm, n1)) = self.sig.mul_monomials(&prefix, t) else {
                    continue;
                };
                let Some((full, n2)) = self.sig.mul_monomials(&pm, &suffix) else {
                    continue;
                };
                let v = c * tc;
                accumulate(acc, full, if negative ^ n1 ^ n2 { -v } else { v });
            }
        }
    }

    pub fn is_closed(&self, x: &Element) -> Result<bool> {
        Ok(self.apply_d(x)?.is_zero())
    }

    /// d(d(g)) = 0 on every generator.
    pub fn check_d_squared(&self) -> Report {
        let start = Instant::now();
        let residuals: Vec<(GenId, Element)> = (0..self.sig.len() as GenId)
            .into_par_iter()
            .map(|g| {
                let dd = self.apply_d(&self.diff[g as usize]).expect("own signature");
                (g, dd)
            })
            .collect();
        let images: usize = self.diff.iter().map(Element::len).sum();
        let report = match residuals.into_iter().find(|(_, r)| !r.is_zero()) {
            Some((g, r)) => Report::fail("d2", self.sig.name(g), r),
            None => Report::pass("d2"),
        };
        report
            .with_count("generators", self.sig.len())
            .with_count("differential_terms", images)
            .timed_since(start)
    }

    /// Extend by a new generator with `d(gen) = λ · d_image`. This is the
    /// explicit model of the homotopy fiber of the cocycle `d_image`.
    pub fn adjoin_generator(&self, gen: GeneratorDecl, d_image: &Element, lambda: &Q) -> Result<Self> {
        let expected = Bidegree::new(gen.bidegree.degree + 1, gen.bidegree.parity);
        if !d_image.is_zero() {
            match d_image.bidegree() {
                None => {
                    return Err(Error::InhomogeneousImage {
                        generator: gen.name.clone(),
                    })
                }
                Some(b) if b != expected => {
                    return Err(Error::BidegreeMismatch {
                        generator: gen.name.clone(),
                        expected: expected.to_string(),
                        found: b.to_string(),
                    })
                }
                _ => {}
            }
        }
        let dd = self.apply_d(d_image)?;
        if !dd.is_zero() {
            return Err(Error::NotClosed {
                residual: Box::new(dd),
            });
        }
        let name = gen.name.clone();
        let mut decls = self.sig.generators().to_vec();
        decls.push(gen);
        let sig = Signature::new(decls)?;
        let mut images = Vec::with_capacity(sig.len());
        for decl in sig.generators() {
            let img = if decl.name == name {
                d_image.transport(&sig)?.scale(lambda)
            } else {
                self.d_of(&decl.name)?.transport(&sig)?
            };
            images.push(img);
        }
        Self::from_images(sig, images)
    }

    /// Adjoin several generators at once (images may mention each other).
    pub fn extend(&self, gens: Vec<(GeneratorDecl, Vec<(Q, Vec<(String, u32)>)>)>) -> Result<Self> {
        let mut decls = self.sig.generators().to_vec();
        decls.extend(gens.iter().map(|(g, _)| g.clone()));
        let sig = Signature::new(decls)?;
        let mut named = Vec::new();
        for decl in self.sig.generators() {
            named.push((decl.name.clone(), self.d_of(&decl.name)?.transport(&sig)?));
        }
        for (g, terms) in &gens {
            let mut img = Element::zero(&sig);
            for (c, mono) in terms {
                let raw: Vec<(&str, u32)> = mono.iter().map(|(n, e)| (n.as_str(), *e)).collect();
                img = &img + &Element::normalize(&sig, &raw, c.clone())?;
            }
            named.push((g.name.clone(), img));
        }
        Self::new(sig.clone(), named.iter().map(|(n, e)| (n.as_str(), e.clone())).collect())
    }

    /// Quotient by the ideal generated by `killed` (the pushout along
    /// `g ↦ 0`). Remaining differentials are substituted.
    pub fn set_generators_to_zero(&self, killed: &[&str]) -> Result<Self> {
        let killed_ids: Vec<GenId> = killed.iter().map(|n| self.sig.id(n)).collect::<Result<_>>()?;
        let decls: Vec<GeneratorDecl> = self
            .sig
            .generators()
            .iter()
            .enumerate()
            .filter(|(i, _)| !killed_ids.contains(&(*i as GenId)))
            .map(|(_, d)| d.clone())
            .collect();
        let sig = Signature::new(decls)?;
        let map = self.name_map(&sig);
        let images = sig
            .generators()
            .iter()
            .map(|d| {
                let old = self.sig.id(&d.name).expect("kept generator");
                self.diff[old as usize].remap(&sig, |g| map[g as usize])
            })
            .collect();
        Self::from_images(sig, images)
    }

    /// Generator map from this algebra onto a quotient signature, by name.
    pub fn name_map(&self, target: &Signature) -> Vec<Option<GenId>> {
        self.sig
            .generators()
            .iter()
            .map(|d| target.id(&d.name).ok())
            .collect()
    }

    /// Tensor product; generator names must be disjoint.
    pub fn tensor(&self, other: &SemifreeDgca) -> Result<Self> {
        let mut decls = self.sig.generators().to_vec();
        decls.extend(other.sig.generators().iter().cloned());
        let sig = Signature::new(decls)?;
        let mut images = Vec::with_capacity(sig.len());
        for d in sig.generators() {
            let img = match self.sig.id(&d.name) {
                Ok(_) => self.d_of(&d.name)?.transport(&sig)?,
                Err(_) => other.d_of(&d.name)?.transport(&sig)?,
            };
            images.push(img);
        }
        Self::from_images(sig, images)
    }

    /// Same generators and same differential, possibly in another
    /// signature instance.
    pub fn same_as(&self, other: &SemifreeDgca) -> bool {
        *self.sig == *other.sig
            && self
                .diff
                .iter()
                .zip(&other.diff)
                .all(|(a, b)| a.terms() == b.terms())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = DgcaJson {
            generators: self.sig.generators(),
            differential: self
                .sig
                .generators()
                .iter()
                .zip(&self.diff)
                .filter(|(_, img)| !img.is_zero())
                .map(|(d, img)| (d.name.clone(), img.to_terms_json()))
                .collect(),
        };
        serde_json::to_value(json).expect("dgca serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Owned {
            generators: Vec<GeneratorDecl>,
            differential: Vec<(String, Vec<TermJson>)>,
        }
        let owned: Owned = serde_json::from_value(value.clone())?;
        let sig = Signature::new(owned.generators)?;
        let mut images = Vec::new();
        for (name, terms) in &owned.differential {
            images.push((name.as_str(), Element::from_terms_json(&sig, terms)?));
        }
        Self::new(sig, images)
    }
}
