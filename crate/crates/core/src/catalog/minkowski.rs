use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{product, CatalogAlgebra, CatalogTag};
use crate::clifford::{index_subsets, CliffordRep};
use crate::dgca::SemifreeDgca;
use crate::error::{Error, Result};
use crate::fierz::{quartic_fierz_check, FierzFamily};
use crate::graded::element::{accumulate, Accumulator};
use crate::graded::{format_q, qi, Bidegree, Element, GenId, GeneratorDecl, Signature, Q};
use crate::report::Report;

/// CE(ℝ^{d-1,1|N}): `dψ = 0`, `de^a = ψ̄Γ^aψ = Σ (CΓ^a)_{αβ} ψ^α ψ^β`.
///
/// Generators are `e[0..d)` at (1, even) and `psi[1..=N]` at (1, odd).
#[derive(Clone, Debug)]
pub struct SuperMinkowski {
    pub rep: CliffordRep,
    pub algebra: Arc<SemifreeDgca>,
    e_ids: Vec<GenId>,
    psi_ids: Vec<GenId>,
}

pub fn super_minkowski(d: usize, rep: &CliffordRep) -> Result<CatalogAlgebra> {
    let m = SuperMinkowski::new(d, rep)?;
    Ok(CatalogAlgebra {
        tag: CatalogTag::SuperMink {
            d,
            n: rep.spinor_dim(),
        },
        algebra: m.algebra.clone(),
        provenance: format!("super-Minkowski d={d}, N={}", rep.spinor_dim()),
    })
}

/// Generator declarations of super-Minkowski space.
pub(crate) fn minkowski_decls(d: usize, n: usize) -> Vec<GeneratorDecl> {
    let mut decls: Vec<GeneratorDecl> = (0..d as i64)
        .map(|a| GeneratorDecl::indexed("e", &[a], Bidegree::even(1)))
        .collect();
    decls.extend((1..=n as i64).map(|a| GeneratorDecl::indexed("psi", &[a], Bidegree::odd(1))));
    decls
}

/// `Σ_{αβ} P_{αβ} ψ^α ψ^β` in `sig`, given the ψ generator ids.
pub(crate) fn spinor_bilinear(
    sig: &Arc<Signature>,
    psi: &[GenId],
    pairing: &crate::clifford::IntMatrix,
) -> Element {
    let mut acc = Accumulator::default();
    for (a, b, v) in pairing.nonzeros() {
        let t = product(sig, &[psi[a], psi[b]], qi(v));
        for (m, c) in t.terms() {
            accumulate(&mut acc, m.clone(), c.clone());
        }
    }
    Element::from_accumulator(sig, acc)
}

impl SuperMinkowski {
    pub fn new(d: usize, rep: &CliffordRep) -> Result<Self> {
        rep.expect_dim(d)?;
        let n = rep.spinor_dim();
        let sig = Signature::new(minkowski_decls(d, n))?;
        let e_ids: Vec<GenId> = (0..d as i64)
            .map(|a| sig.indexed_id("e", &[a]))
            .collect::<Result<_>>()?;
        let psi_ids: Vec<GenId> = (1..=n as i64)
            .map(|a| sig.indexed_id("psi", &[a]))
            .collect::<Result<_>>()?;
        let mut images = Vec::new();
        for a in 0..d {
            let pairing = rep.antisym_gamma(&[a])?.matrix;
            images.push((sig.name(e_ids[a]).to_string(), spinor_bilinear(&sig, &psi_ids, &pairing)));
        }
        let algebra = SemifreeDgca::new(
            sig.clone(),
            images.iter().map(|(n, e)| (n.as_str(), e.clone())).collect(),
        )?;
        Ok(SuperMinkowski {
            rep: rep.clone(),
            algebra: Arc::new(algebra),
            e_ids,
            psi_ids,
        })
    }

    pub fn d(&self) -> usize {
        self.rep.d()
    }

    pub fn signature(&self) -> &Arc<Signature> {
        self.algebra.signature()
    }

    pub fn e_ids(&self) -> &[GenId] {
        &self.e_ids
    }

    pub fn psi_ids(&self) -> &[GenId] {
        &self.psi_ids
    }

    /// μ_{p+2} = Σ over ordered tuples (a₁…a_p) of
    /// (CΓ^{a₁…a_p})_{αβ} ψ^α ψ^β e_{a₁}⋯e_{a_p}, with `e_a = η_{ab} e^b`.
    ///
    /// Both factors are antisymmetric in the indices, so the ordered sum is
    /// `p!` times the sum over increasing tuples.
    pub fn brane_cocycle(&self, p: usize) -> Result<Element> {
        self.brane_cocycle_in(self.signature(), p)
    }

    /// Same element, built in a larger signature containing `e`, `psi`.
    pub fn brane_cocycle_in(&self, sig: &Arc<Signature>, p: usize) -> Result<Element> {
        let d = self.d();
        let e: Vec<GenId> = (0..d as i64)
            .map(|a| sig.indexed_id("e", &[a]))
            .collect::<Result<_>>()?;
        let psi: Vec<GenId> = (1..=self.rep.spinor_dim() as i64)
            .map(|a| sig.indexed_id("psi", &[a]))
            .collect::<Result<_>>()?;
        let factorial: i64 = (1..=p as i64).product();
        let subsets = index_subsets(d, p);
        let acc = subsets
            .par_iter()
            .fold(Accumulator::default, |mut acc, idx| {
                let pm = self.rep.antisym_gamma(idx).expect("increasing indices");
                let lowering: i64 = idx.iter().map(|&a| self.rep.eta(a)).product();
                let mut gens: Vec<GenId> = vec![0, 0];
                gens.extend(idx.iter().map(|&a| e[a]));
                for (al, be, v) in pm.matrix.nonzeros() {
                    gens[0] = psi[al];
                    gens[1] = psi[be];
                    let t = product(sig, &gens, qi(v * lowering * factorial));
                    for (m, c) in t.terms() {
                        accumulate(&mut acc, m.clone(), c.clone());
                    }
                }
                acc
            })
            .reduce(Accumulator::default, crate::graded::element::merge_accumulators);
        let mu = Element::from_accumulator(sig, acc);
        if mu.is_zero() {
            return Err(Error::ZeroCocycle(p));
        }
        Ok(mu)
    }
}

/// Outcome of comparing dμ₇ with μ₄∧μ₄.
#[derive(Clone, Debug)]
pub struct M5Relation {
    pub c: Q,
    pub report: Report,
}

/// Check `dμ_hi = c · μ_lo ∧ μ_lo` for a single rational `c`, in `algebra`.
/// A zero left side is reported as proportional with `c = 0`.
pub fn verify_relation(
    algebra: &SemifreeDgca,
    mu_hi: &Element,
    mu_lo: &Element,
) -> Result<(Q, Element, Element)> {
    let d_hi = algebra.apply_d(mu_hi)?;
    let square = mu_lo * mu_lo;
    if d_hi.is_zero() {
        return Ok((Q::zero(), d_hi, square));
    }
    match d_hi.ratio_to(&square) {
        Some(c) => Ok((c, d_hi, square)),
        None => {
            // residual against the best single-coefficient guess
            let guess = if square.is_zero() {
                Q::zero()
            } else {
                let m = &square.terms()[0].0;
                d_hi.coefficient(m) / &square.terms()[0].1
            };
            let residual = &d_hi - &square.scale(&guess);
            Err(Error::NotProportional {
                terms: residual.len(),
                residual: Box::new(residual),
            })
        }
    }
}

/// dμ₇ = c·μ₄∧μ₄ in d = 11, symbolically and by tensor contraction.
pub fn verify_m5_relation(mink: &SuperMinkowski) -> Result<M5Relation> {
    let start = Instant::now();
    let mu4 = mink.brane_cocycle(2)?;
    let mu7 = mink.brane_cocycle(5)?;
    let (c, d_mu7, square) = verify_relation(&mink.algebra, &mu7, &mu4)?;
    let fast = quartic_fierz_check(&mink.rep, FierzFamily::Mu7Relation);
    let fast_c = fast.scalars.get("c").and_then(|v| v.as_str()).map(str::to_string);
    let agree = fast.passed() && fast_c.as_deref() == Some(format_q(&c).as_str());
    let mut report = Report::pass("m5.relation")
        .with_scalar("c", format_q(&c))
        .with_scalar("mu4_terms", mu4.len())
        .with_scalar("mu7_terms", mu7.len())
        .with_scalar("d_mu7_terms", d_mu7.len())
        .with_scalar("mu4_squared_terms", square.len())
        .with_scalar("tensor_path_agrees", agree)
        .with_child(fast);
    if !agree {
        report = report.with_note(format!(
            "tensor contraction constant {fast_c:?} differs from symbolic {}",
            format_q(&c)
        ));
        report.verdict = crate::report::Verdict::Fail;
    }
    Ok(M5Relation {
        c,
        report: report.timed_since(start),
    })
}

/// CE(𝔪2𝔟𝔯𝔞𝔫𝔢): adjoin `h3` with `dh₃ = -μ₄`.
pub fn m2brane(mink: &SuperMinkowski) -> Result<CatalogAlgebra> {
    let mu4 = mink.brane_cocycle(2)?;
    let algebra = mink.algebra.adjoin_generator(
        GeneratorDecl::new("h3", Bidegree::even(3)),
        &mu4,
        &-Q::one(),
    )?;
    Ok(CatalogAlgebra::new(
        CatalogTag::M2brane,
        algebra,
        "super-Minkowski d=11 extended by h3, dh3 = -mu4",
    ))
}

/// `h₃∧μ₄ + (1/c)μ₇` in CE(𝔪2𝔟𝔯𝔞𝔫𝔢) and its closure report.
pub fn m5_cocycle(mink: &SuperMinkowski, m2: &CatalogAlgebra, c: &Q) -> Result<(Element, Report)> {
    let start = Instant::now();
    let sig = m2.algebra.signature();
    let mu4 = mink.brane_cocycle_in(sig, 2)?;
    let mu7 = mink.brane_cocycle_in(sig, 5)?;
    let h3 = Element::generator(sig, "h3")?;
    let phi = &(&h3 * &mu4) + &mu7.scale(&c.recip());
    let d_phi = m2.algebra.apply_d(&phi)?;
    let report = Report::from_residual("m5.cocycle", "h3*mu4 + mu7/c", d_phi)
        .with_scalar("inverse_c", format_q(&c.recip()))
        .with_scalar("cocycle_terms", phi.len())
        .timed_since(start);
    Ok((phi, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::product;
    use crate::clifford::CliffordRep;

    fn mink(d: usize) -> SuperMinkowski {
        let rep = CliffordRep::build(d, (1, d - 1)).unwrap();
        SuperMinkowski::new(d, &rep).unwrap()
    }

    #[test]
    fn minkowski_squares_to_zero() {
        for d in [3, 11] {
            let m = mink(d);
            assert!(m.algebra.check_d_squared().passed(), "d={d}");
        }
    }

    #[test]
    fn three_dimensional_mu4() {
        let m = mink(3);
        let mu4 = m.brane_cocycle(2).unwrap();
        assert!(!mu4.is_zero());
        let d_mu4 = m.algebra.apply_d(&mu4).unwrap();
        // Γ^{ab} ∝ ε^{abc}Γ_c in three dimensions, so μ₄ is closed and in fact exact
        assert!(d_mu4.is_zero());
        let volume = product(m.signature(), m.e_ids(), crate::graded::qi(1));
        let d_volume = m.algebra.apply_d(&volume).unwrap();
        let ratio = mu4.ratio_to(&d_volume);
        eprintln!("mu4 / d(e0 e1 e2) = {ratio:?}");
        assert!(ratio.is_some());
        // μ₃ = ψ̄Γ_aψ e^a is closed in three dimensions
        let mu3 = m.brane_cocycle(1).unwrap();
        assert!(m.algebra.apply_d(&mu3).unwrap().is_zero());
    }
}
