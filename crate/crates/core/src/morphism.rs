//! Morphisms of semifree DGCAs, given by generator images, and chain
//! homotopies between them.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::dgca::{check_generator_image, SemifreeDgca};
use crate::error::{Error, Result};
use crate::graded::element::{accumulate, merge_accumulators, Accumulator};
use crate::graded::{same_signature, Element, GenId, Monomial, TermJson, Q};
use crate::report::Report;

/// Map an element through per-generator images, multiplicatively.
fn apply_images(images: &[Element], target: &Arc<crate::graded::Signature>, x: &Element) -> Element {
    let term_image = |m: &Monomial, c: &Q, acc: &mut Accumulator| {
        let mut prod = Element::scalar(target, c.clone());
        for g in m.flat() {
            let img = &images[g as usize];
            if img.is_zero() {
                return;
            }
            prod = prod.mul_sequential(img);
            if prod.is_zero() {
                return;
            }
        }
        for (pm, pc) in prod.terms() {
            accumulate(acc, pm.clone(), pc.clone());
        }
    };
    let acc = if x.len() < 64 {
        let mut acc = Accumulator::default();
        for (m, c) in x.terms() {
            term_image(m, c, &mut acc);
        }
        acc
    } else {
        x.terms()
            .par_chunks(16)
            .fold(Accumulator::default, |mut acc, chunk| {
                for (m, c) in chunk {
                    term_image(m, c, &mut acc);
                }
                acc
            })
            .reduce(Accumulator::default, merge_accumulators)
    };
    Element::from_accumulator(target, acc)
}

#[derive(Clone, Debug)]
pub struct DgcaMorphism {
    source: Arc<SemifreeDgca>,
    target: Arc<SemifreeDgca>,
    images: Vec<Element>,
}

#[derive(Serialize)]
struct MorphismJson {
    source: serde_json::Value,
    target: serde_json::Value,
    images: Vec<(String, Vec<TermJson>)>,
}

pub fn make_morphism(
    source: &Arc<SemifreeDgca>,
    target: &Arc<SemifreeDgca>,
    images: Vec<(&str, Element)>,
) -> Result<DgcaMorphism> {
    DgcaMorphism::new(source, target, images)
}

impl DgcaMorphism {
    /// Build and validate. Generators not listed map to zero.
    pub fn new(
        source: &Arc<SemifreeDgca>,
        target: &Arc<SemifreeDgca>,
        images: Vec<(&str, Element)>,
    ) -> Result<Self> {
        let f = Self::unchecked(source, target, images)?;
        f.validate()?;
        Ok(f)
    }

    /// Build without the chain-map check; bidegrees are still enforced.
    pub fn unchecked(
        source: &Arc<SemifreeDgca>,
        target: &Arc<SemifreeDgca>,
        images: Vec<(&str, Element)>,
    ) -> Result<Self> {
        let ssig = source.signature();
        let tsig = target.signature();
        let mut imgs = vec![Element::zero(tsig); ssig.len()];
        for (name, img) in images {
            let id = ssig.id(name)?;
            let img = if same_signature(img.signature(), tsig) {
                img
            } else {
                img.transport(tsig)?
            };
            check_generator_image(ssig, id, &img, 0)?;
            imgs[id as usize] = img;
        }
        Ok(DgcaMorphism {
            source: source.clone(),
            target: target.clone(),
            images: imgs,
        })
    }

    pub fn identity(a: &Arc<SemifreeDgca>) -> Self {
        let sig = a.signature();
        DgcaMorphism {
            source: a.clone(),
            target: a.clone(),
            images: (0..sig.len() as GenId).map(|g| Element::gen(sig, g)).collect(),
        }
    }

    /// Every source generator goes to the target generator of the same name,
    /// except those overridden in `overrides`. Validated.
    pub fn by_name(
        source: &Arc<SemifreeDgca>,
        target: &Arc<SemifreeDgca>,
        overrides: Vec<(&str, Element)>,
    ) -> Result<Self> {
        let tsig = target.signature();
        let mut images: Vec<(String, Element)> = Vec::new();
        for decl in source.signature().generators() {
            if let Some((_, img)) = overrides.iter().find(|(n, _)| *n == decl.name) {
                images.push((decl.name.clone(), img.clone()));
            } else {
                images.push((decl.name.clone(), Element::generator(tsig, &decl.name)?));
            }
        }
        Self::new(
            source,
            target,
            images.iter().map(|(n, e)| (n.as_str(), e.clone())).collect(),
        )
    }

    pub fn source(&self) -> &Arc<SemifreeDgca> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SemifreeDgca> {
        &self.target
    }

    pub fn image(&self, name: &str) -> Result<&Element> {
        Ok(&self.images[self.source.signature().id(name)? as usize])
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !same_signature(x.signature(), self.source.signature()) {
            return Err(Error::SignatureMismatch);
        }
        Ok(apply_images(&self.images, self.target.signature(), x))
    }

    /// `d(f(x)) - f(d(x))` for a source generator.
    pub fn chain_residual(&self, id: GenId) -> Element {
        let lhs = self
            .target
            .apply_d(&self.images[id as usize])
            .expect("image in target");
        let rhs = self
            .apply(self.source.d_gen(id))
            .expect("differential in source");
        &lhs - &rhs
    }

    fn validate(&self) -> Result<()> {
        let n = self.source.signature().len() as GenId;
        let residuals: Vec<(GenId, Element)> = (0..n)
            .into_par_iter()
            .map(|g| (g, self.chain_residual(g)))
            .collect();
        match residuals.into_iter().find(|(_, r)| !r.is_zero()) {
            Some((g, r)) => Err(Error::ChainMapViolation {
                generator: self.source.signature().name(g).to_string(),
                residual: Box::new(r),
            }),
            None => Ok(()),
        }
    }

    /// Chain-map check as a report, for morphisms built with `unchecked`.
    pub fn check(&self) -> Report {
        let start = Instant::now();
        let report = match self.validate() {
            Ok(()) => Report::pass("chain_map"),
            Err(Error::ChainMapViolation {
                generator,
                residual,
            }) => Report::fail("chain_map", generator, *residual),
            Err(e) => Report::fail_with_note("chain_map", e.to_string()),
        };
        report
            .with_count("generators", self.images.len())
            .with_count(
                "image_terms",
                self.images.iter().map(Element::len).sum(),
            )
            .timed_since(start)
    }

    /// `next ∘ self`: apply `self` first.
    pub fn then(&self, next: &DgcaMorphism) -> Result<DgcaMorphism> {
        if !same_signature(self.target.signature(), next.source.signature()) {
            return Err(Error::SignatureMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|img| {
                let img = img.transport(next.source.signature())?;
                next.apply(&img)
            })
            .collect::<Result<_>>()?;
        Ok(DgcaMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }

    /// Same source, target and generator images.
    pub fn same_as(&self, other: &DgcaMorphism) -> bool {
        self.source.same_as(&other.source)
            && self.target.same_as(&other.target)
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| a.terms() == b.terms())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sig = self.source.signature();
        let json = MorphismJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(i, img)| (sig.name(i as GenId).to_string(), img.to_terms_json()))
                .collect(),
        };
        serde_json::to_value(json).expect("morphism serializes")
    }
}

/// `compose(f, g)` is `g ∘ f`.
pub fn compose(f: &DgcaMorphism, g: &DgcaMorphism) -> Result<DgcaMorphism> {
    f.then(g)
}

/// A degree −1 map `s` between parallel morphisms `f, g`, extended to
/// products as an `(f, g)`-derivation:
/// `s(ab) = s(a) g(b) + (-1)^{deg a} f(a) s(b)`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    f: DgcaMorphism,
    g: DgcaMorphism,
    images: Vec<Element>,
}

impl ChainHomotopy {
    /// Generators not listed map to zero.
    pub fn new(f: &DgcaMorphism, g: &DgcaMorphism, images: Vec<(&str, Element)>) -> Result<Self> {
        if !f.source.same_as(&g.source) || !f.target.same_as(&g.target) {
            return Err(Error::SignatureMismatch);
        }
        let ssig = f.source.signature();
        let tsig = f.target.signature();
        let mut imgs = vec![Element::zero(tsig); ssig.len()];
        for (name, img) in images {
            let id = ssig.id(name)?;
            let img = img.transport(tsig)?;
            check_generator_image(ssig, id, &img, -1)?;
            imgs[id as usize] = img;
        }
        Ok(ChainHomotopy {
            f: f.clone(),
            g: g.clone(),
            images: imgs,
        })
    }

    pub fn zero(f: &DgcaMorphism, g: &DgcaMorphism) -> Result<Self> {
        Self::new(f, g, Vec::new())
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let ssig = self.f.source.signature();
        if !same_signature(x.signature(), ssig) {
            return Err(Error::SignatureMismatch);
        }
        let tsig = self.f.target.signature();
        let mut out = Element::zero(tsig);
        for (m, c) in x.terms() {
            let flat: Vec<GenId> = m.flat().collect();
            let mut prefix_degree = 0u32;
            for (i, &gi) in flat.iter().enumerate() {
                let s = &self.images[gi as usize];
                if !s.is_zero() {
                    let mut prod = Element::scalar(tsig, c.clone());
                    for &a in &flat[..i] {
                        prod = prod.mul_sequential(&self.f.images[a as usize]);
                    }
                    prod = prod.mul_sequential(s);
                    for &b in &flat[i + 1..] {
                        prod = prod.mul_sequential(&self.g.images[b as usize]);
                    }
                    if prefix_degree % 2 == 1 {
                        prod = prod.neg();
                    }
                    out = &out + &prod;
                }
                prefix_degree += ssig.bidegree(gi).degree;
            }
        }
        Ok(out)
    }

    /// `f(x) - g(x) - d s(x) - s(d x)` for a source generator.
    pub fn residual(&self, id: GenId) -> Element {
        let ssig = self.f.source.signature();
        let x = Element::gen(ssig, id);
        let fx = &self.f.images[id as usize];
        let gx = &self.g.images[id as usize];
        let ds = self
            .f
            .target
            .apply_d(&self.apply(&x).expect("source"))
            .expect("target");
        let sd = self.apply(self.f.source.d_gen(id)).expect("source");
        let lhs = fx - gx;
        let rhs = &ds + &sd;
        &lhs - &rhs
    }
}

/// Pass iff `f - g = d∘s + s∘d` on every generator.
pub fn check_homotopy(f: &DgcaMorphism, g: &DgcaMorphism, s: &ChainHomotopy) -> Report {
    let start = Instant::now();
    if !s.f.same_as(f) || !s.g.same_as(g) {
        return Report::fail_with_note("homotopy", "homotopy is not around the given morphisms");
    }
    let n = f.source.signature().len() as GenId;
    let residuals: Vec<(GenId, Element)> = (0..n).into_par_iter().map(|x| (x, s.residual(x))).collect();
    let report = match residuals.into_iter().find(|(_, r)| !r.is_zero()) {
        Some((x, r)) => Report::fail("homotopy", f.source.signature().name(x), r),
        None => Report::pass("homotopy"),
    };
    report.with_count("generators", n as usize).timed_since(start)
}
