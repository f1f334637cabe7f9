use smallvec::SmallVec;

use super::signature::GenId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub gen: GenId,
    pub exp: u32,
}

/// A product of generators in canonical order, each with a positive exponent.
///
/// Monomials carry no sign: reordering into canonical form is accounted for
/// in the coefficient of the owning element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[Factor; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn generator(gen: GenId) -> Self {
        let mut v = SmallVec::new();
        v.push(Factor { gen, exp: 1 });
        Monomial(v)
    }

    pub(crate) fn with_capacity(n: usize) -> Self {
        Monomial(SmallVec::with_capacity(n))
    }

    /// Caller guarantees strictly increasing generators.
    pub(crate) fn push_raw(&mut self, f: Factor) {
        debug_assert!(self.0.last().is_none_or(|l| l.gen < f.gen));
        self.0.push(f);
    }

    /// Build from already-sorted factors.
    pub fn from_sorted(factors: impl IntoIterator<Item = Factor>) -> Self {
        let mut m = Monomial::one();
        for f in factors {
            if f.exp > 0 {
                m.push_raw(f);
            }
        }
        m
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, gen: GenId) -> u32 {
        self.0
            .binary_search_by_key(&gen, |f| f.gen)
            .map(|i| self.0[i].exp)
            .unwrap_or(0)
    }

    pub fn contains(&self, gen: GenId) -> bool {
        self.exponent(gen) > 0
    }

    /// Total number of generator factors, with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|f| f.exp).sum()
    }

    /// Factors in order, each repeated by its exponent.
    pub fn flat(&self) -> impl Iterator<Item = GenId> + '_ {
        self.0
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.gen, f.exp as usize))
    }

    /// Split at flat position `pos`: returns (prefix, generator, suffix), with
    /// `prefix * generator * suffix` equal to `self` with no sign.
    pub fn split_at_flat(&self, pos: u32) -> (Monomial, GenId, Monomial) {
        let mut seen = 0;
        for (i, f) in self.0.iter().enumerate() {
            if pos < seen + f.exp {
                let before = pos - seen;
                let after = f.exp - before - 1;
                let mut prefix = Monomial(self.0[..i].iter().copied().collect());
                if before > 0 {
                    prefix.0.push(Factor { gen: f.gen, exp: before });
                }
                let mut suffix = Monomial::with_capacity(self.0.len() - i);
                if after > 0 {
                    suffix.0.push(Factor { gen: f.gen, exp: after });
                }
                suffix.0.extend(self.0[i + 1..].iter().copied());
                return (prefix, f.gen, suffix);
            }
            seen += f.exp;
        }
        panic!("flat position {pos} out of range for monomial of length {seen}");
    }
}
