use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::bidegree::Bidegree;
use super::monomial::Monomial;
use super::signature::{same_signature, GenId, Signature};
use super::Q;
use crate::error::{Error, Result};

/// Products with more term pairs than this are expanded on the rayon pool.
const PAR_THRESHOLD: usize = 1 << 14;

pub(crate) type Accumulator = FxHashMap<Monomial, Q>;

pub(crate) fn accumulate(acc: &mut Accumulator, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

pub(crate) fn merge_accumulators(mut a: Accumulator, b: Accumulator) -> Accumulator {
    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (m, c) in small {
        accumulate(&mut big, m, c);
    }
    a = big;
    a
}

/// An exact element of a free bigraded commutative algebra, in canonical form:
/// terms sorted by monomial, no zero coefficients.
#[derive(Clone)]
pub struct Element {
    sig: Arc<Signature>,
    terms: Vec<(Monomial, Q)>,
}

impl Element {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Element {
            sig: sig.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::scalar(sig, Q::one())
    }

    pub fn scalar(sig: &Arc<Signature>, c: Q) -> Self {
        Self::from_monomial(sig, Monomial::one(), c)
    }

    pub fn from_monomial(sig: &Arc<Signature>, m: Monomial, c: Q) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Element {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn gen(sig: &Arc<Signature>, id: GenId) -> Self {
        Self::from_monomial(sig, Monomial::generator(id), Q::one())
    }

    pub fn generator(sig: &Arc<Signature>, name: &str) -> Result<Self> {
        Ok(Self::gen(sig, sig.id(name)?))
    }

    /// Canonicalize a product of generators given in arbitrary order.
    pub fn normalize(sig: &Arc<Signature>, raw: &[(&str, u32)], coeff: Q) -> Result<Self> {
        let mut mono = Monomial::one();
        let mut negative = false;
        for &(name, exp) in raw {
            let id = sig.id(name)?;
            for _ in 0..exp {
                match sig.mul_monomials(&mono, &Monomial::generator(id)) {
                    Some((m, neg)) => {
                        mono = m;
                        negative ^= neg;
                    }
                    None => return Ok(Self::zero(sig)),
                }
            }
        }
        let c = if negative { -coeff } else { coeff };
        Ok(Self::from_monomial(sig, mono, c))
    }

    /// Sum of arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(sig: &Arc<Signature>, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut acc = Accumulator::default();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Self::from_accumulator(sig, acc)
    }

    pub(crate) fn from_accumulator(sig: &Arc<Signature>, acc: Accumulator) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Element {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn bidegrees(&self) -> BTreeSet<Bidegree> {
        self.terms
            .iter()
            .map(|(m, _)| self.sig.monomial_bidegree(m))
            .collect()
    }

    /// The common bidegree of all terms; `None` for zero or mixed elements.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let b = self.bidegrees();
        if b.len() == 1 {
            b.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.bidegrees().len() <= 1
    }

    fn check_sig(&self, other: &Element) -> Result<()> {
        if same_signature(&self.sig, &other.sig) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_sig(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Element {
            sig: self.sig.clone(),
            terms: out,
        })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Element {
        if c.is_zero() {
            return Element::zero(&self.sig);
        }
        Element {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Graded-commutative product; expanded in parallel when large.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_sig(other)?;
        if self.terms.len().saturating_mul(other.terms.len()) < PAR_THRESHOLD {
            return Ok(self.mul_sequential(other));
        }
        let sig = &self.sig;
        let acc = self
            .terms
            .par_chunks(64)
            .fold(Accumulator::default, |mut acc, chunk| {
                mul_into(sig, chunk, &other.terms, &mut acc);
                acc
            })
            .reduce(Accumulator::default, merge_accumulators);
        Ok(Element::from_accumulator(sig, acc))
    }

    /// Single-threaded product, identical in result to [`Element::try_mul`].
    pub fn mul_sequential(&self, other: &Element) -> Element {
        assert!(same_signature(&self.sig, &other.sig), "signature mismatch");
        let mut acc = Accumulator::default();
        mul_into(&self.sig, &self.terms, &other.terms, &mut acc);
        Element::from_accumulator(&self.sig, acc)
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut out = Element::one(&self.sig);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Rewrite into another signature. `map` sends each generator to its id in
    /// `target`, or `None` to set it to zero.
    pub fn remap(
        &self,
        target: &Arc<Signature>,
        map: impl Fn(GenId) -> Option<GenId>,
    ) -> Element {
        let mut acc = Accumulator::default();
        'terms: for (m, c) in &self.terms {
            let mut mono = Monomial::one();
            let mut neg = false;
            for g in m.flat() {
                let Some(t) = map(g) else { continue 'terms };
                match target.mul_monomials(&mono, &Monomial::generator(t)) {
                    Some((mm, n)) => {
                        mono = mm;
                        neg ^= n;
                    }
                    None => continue 'terms,
                }
            }
            accumulate(&mut acc, mono, if neg { -c.clone() } else { c.clone() });
        }
        Element::from_accumulator(target, acc)
    }

    /// Move into a signature that contains all of this element's generators
    /// under the same names.
    pub fn transport(&self, target: &Arc<Signature>) -> Result<Element> {
        let ids: Vec<GenId> = self
            .sig
            .generators()
            .iter()
            .map(|g| target.id(&g.name))
            .collect::<Result<_>>()?;
        Ok(self.remap(target, |g| Some(ids[g as usize])))
    }

    /// Drop every term containing a generator in `killed`.
    pub fn kill(&self, killed: &[GenId]) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| killed.iter().all(|&g| !m.contains(g)))
            .cloned()
            .collect();
        Element {
            sig: self.sig.clone(),
            terms,
        }
    }

    /// If `self == c · other` for a single rational `c`, return it.
    pub fn ratio_to(&self, other: &Element) -> Option<Q> {
        if self.terms.len() != other.terms.len() || other.is_zero() {
            return None;
        }
        let c = &self.terms[0].1 / &other.terms[0].1;
        let ok = self
            .terms
            .iter()
            .zip(&other.terms)
            .all(|((m, x), (n, y))| m == n && *x == &c * y);
        ok.then_some(c)
    }
}

fn mul_into(sig: &Signature, a: &[(Monomial, Q)], b: &[(Monomial, Q)], acc: &mut Accumulator) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            if let Some((m, neg)) = sig.mul_monomials(ma, mb) {
                let c = ca * cb;
                accumulate(acc, m, if neg { -c } else { c });
            }
        }
    }
}

/// Σ cᵢ xᵢ over a common signature.
pub fn linear_combine(terms: &[(Q, &Element)]) -> Result<Element> {
    let Some((_, first)) = terms.first() else {
        return Err(Error::SignatureMismatch);
    };
    let sig = first.sig.clone();
    let mut acc = Accumulator::default();
    for (c, x) in terms {
        first.check_sig(x)?;
        for (m, y) in &x.terms {
            accumulate(&mut acc, m.clone(), c * y);
        }
    }
    Ok(Element::from_accumulator(&sig, acc))
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_signature(&self.sig, &other.sig) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("signature mismatch in add")
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("signature mismatch in sub")
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("signature mismatch in mul")
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let mono = self.sig.format_monomial(m);
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
