use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::minkowski::{minkowski_decls, spinor_bilinear};
use super::resolved::resolve;
use super::{product, CatalogAlgebra, CatalogTag, SuperMinkowski};
use crate::dgca::SemifreeDgca;
use crate::error::Result;
use crate::graded::element::{accumulate, Accumulator};
use crate::graded::{format_q, q, qi, Bidegree, Element, GenId, GeneratorDecl, Monomial, Signature, Q};
use crate::morphism::DgcaMorphism;
use crate::report::Report;

/// CE(𝔦𝔰𝔬(ℝ^{d-1,1|N})): super-Minkowski plus Lorentz generators
/// `omega[a,b]` (a < b) standing for `ω_{ab} = -ω_{ba}`, with
///
/// ```text
/// dψ      = ¼ ω_{ab} Γ^{ab} ψ
/// de^a    = ω^a_b e^b + ψ̄Γ^aψ
/// dω^a_b  = ω^a_c ω^c_b
/// ```
///
/// and `ω^a_b = η^{aa} ω_{ab}`.
#[derive(Clone, Debug)]
pub struct SuperPoincare {
    pub algebra: Arc<SemifreeDgca>,
    omega_ids: Vec<Vec<Option<GenId>>>,
    eta: Vec<i64>,
}

impl SuperPoincare {
    pub fn signature(&self) -> &Arc<Signature> {
        self.algebra.signature()
    }

    pub fn d(&self) -> usize {
        self.eta.len()
    }

    /// `(sign, generator)` for `ω_{ab}`; `None` on the diagonal.
    pub fn omega_lower(&self, a: usize, b: usize) -> Option<(i64, GenId)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.omega_ids[a][b].map(|g| (1, g)),
            std::cmp::Ordering::Greater => self.omega_ids[b][a].map(|g| (-1, g)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// `(sign, generator)` for `ω^a_b = η^{aa} ω_{ab}`.
    pub fn omega_mixed(&self, a: usize, b: usize) -> Option<(i64, GenId)> {
        self.omega_lower(a, b).map(|(s, g)| (s * self.eta[a], g))
    }

    pub fn omega_ids(&self) -> Vec<GenId> {
        self.signature().family("omega").collect()
    }
}

fn omega_decls(d: usize) -> Vec<GeneratorDecl> {
    let mut out = Vec::new();
    for a in 0..d as i64 {
        for b in a + 1..d as i64 {
            out.push(GeneratorDecl::indexed("omega", &[a, b], Bidegree::even(1)));
        }
    }
    out
}

pub fn super_poincare(mink: &SuperMinkowski) -> Result<(SuperPoincare, CatalogAlgebra)> {
    let rep = &mink.rep;
    let d = rep.d();
    let n = rep.spinor_dim();
    let mut decls = minkowski_decls(d, n);
    decls.extend(omega_decls(d));
    let sig = Signature::new(decls)?;
    let e: Vec<GenId> = (0..d as i64).map(|a| sig.indexed_id("e", &[a])).collect::<Result<_>>()?;
    let psi: Vec<GenId> = (1..=n as i64)
        .map(|a| sig.indexed_id("psi", &[a]))
        .collect::<Result<_>>()?;
    let mut omega_ids = vec![vec![None; d]; d];
    for a in 0..d {
        for b in a + 1..d {
            omega_ids[a][b] = Some(sig.indexed_id("omega", &[a as i64, b as i64])?);
        }
    }
    let eta: Vec<i64> = (0..d).map(|a| rep.eta(a)).collect();
    let sp = SuperPoincare {
        algebra: Arc::new(SemifreeDgca::new(sig.clone(), vec![])?),
        omega_ids,
        eta: eta.clone(),
    };

    let mut images: Vec<(String, Element)> = Vec::new();

    // dψ^α = ¼ Σ_{a,b} ω_{ab} (Γ^aΓ^b)^α_β ψ^β = ½ Σ_{a<b} ω_{ab} (Γ^aΓ^b)^α_β ψ^β
    let mut dpsi: Vec<Accumulator> = vec![Accumulator::default(); n];
    for a in 0..d {
        for b in a + 1..d {
            let (_, w) = sp.omega_lower(a, b).expect("off-diagonal");
            let gab = rep.gamma_product(&[a, b]);
            for (al, be, v) in gab.nonzeros() {
                let t = product(&sig, &[w, psi[be]], q(v, 2));
                for (m, c) in t.terms() {
                    accumulate(&mut dpsi[al], m.clone(), c.clone());
                }
            }
        }
    }
    for (al, acc) in dpsi.into_iter().enumerate() {
        images.push((sig.name(psi[al]).to_string(), Element::from_accumulator(&sig, acc)));
    }

    // de^a = Σ_b ω^a_b e^b + ψ̄Γ^aψ
    for a in 0..d {
        let mut img = spinor_bilinear(&sig, &psi, &rep.antisym_gamma(&[a])?.matrix);
        for b in 0..d {
            if let Some((s, w)) = sp.omega_mixed(a, b) {
                img = &img + &product(&sig, &[w, e[b]], qi(s));
            }
        }
        images.push((sig.name(e[a]).to_string(), img));
    }

    // dω_{ab} = η_{aa} dω^a_b = Σ_c η_{cc} ω_{ac} ω_{cb}
    for a in 0..d {
        for b in a + 1..d {
            let (_, w) = sp.omega_lower(a, b).expect("off-diagonal");
            let mut img = Element::zero(&sig);
            for c in 0..d {
                if let (Some((s1, w1)), Some((s2, w2))) = (sp.omega_lower(a, c), sp.omega_lower(c, b)) {
                    img = &img + &product(&sig, &[w1, w2], qi(eta[c] * s1 * s2));
                }
            }
            images.push((sig.name(w).to_string(), img));
        }
    }

    let algebra = SemifreeDgca::new(
        sig.clone(),
        images.iter().map(|(n, e)| (n.as_str(), e.clone())).collect(),
    )?;
    let sp = SuperPoincare {
        algebra: Arc::new(algebra),
        ..sp
    };
    let cat = CatalogAlgebra {
        tag: CatalogTag::SuperPoincare,
        algebra: sp.algebra.clone(),
        provenance: format!("super-Poincare d={d}, N={n}"),
    };
    Ok((sp, cat))
}

/// Enumerate closed index walks `a₁ → a₂ → ⋯ → a_k → a₁` and sum
/// `ω^{a₁}_{a₂} ⋯ ω^{a_k}_{a₁}`, pruning repeated generators.
fn trace_power(sp: &SuperPoincare, k: usize) -> Element {
    let sig = sp.signature();
    let d = sp.d();
    fn walk(
        sp: &SuperPoincare,
        sig: &Signature,
        first: usize,
        cur: usize,
        left: usize,
        mono: Monomial,
        coeff: i64,
        acc: &mut FxHashMap<Monomial, i64>,
    ) {
        let d = sp.d();
        if left == 1 {
            if let Some((s, g)) = sp.omega_mixed(cur, first) {
                if let Some((m, neg)) = sig.mul_monomials(&mono, &Monomial::generator(g)) {
                    let c = if neg { -coeff * s } else { coeff * s };
                    *acc.entry(m).or_insert(0) += c;
                }
            }
            return;
        }
        for next in 0..d {
            if let Some((s, g)) = sp.omega_mixed(cur, next) {
                if let Some((m, neg)) = sig.mul_monomials(&mono, &Monomial::generator(g)) {
                    let c = if neg { -coeff * s } else { coeff * s };
                    walk(sp, sig, first, next, left - 1, m, c, acc);
                }
            }
        }
    }
    let starts: Vec<(usize, usize)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    let acc = starts
        .par_iter()
        .fold(FxHashMap::default, |mut acc, &(a, b)| {
            if k == 1 {
                return acc;
            }
            if let Some((s, g)) = sp.omega_mixed(a, b) {
                walk(sp, sig, a, b, k - 1, Monomial::generator(g), s, &mut acc);
            }
            acc
        })
        .reduce(FxHashMap::default, |mut a, b| {
            for (m, c) in b {
                *a.entry(m).or_insert(0) += c;
            }
            a
        });
    Element::from_terms(sig, acc.into_iter().map(|(m, c)| (m, qi(c))))
}

/// `tr(ω^{∧k})`, its closure, and the vanishing of `tr(ω^{∧2m})` for
/// `2m ≤ k + 1`.
pub fn lorentz_trace(sp: &SuperPoincare, k: usize) -> Result<(Element, Report)> {
    let start = Instant::now();
    let tr = trace_power(sp, k);
    let d_tr = sp.algebra.apply_d(&tr)?;
    let mut children = vec![Report::from_residual(format!("trace.{k}.closed"), format!("tr(omega^{k})"), d_tr)];
    for even in (2..=k + 1).step_by(2) {
        let t = trace_power(sp, even);
        children.push(Report::from_residual(
            format!("trace.{even}.vanishes"),
            format!("tr(omega^{even})"),
            t,
        ));
    }
    let report = Report::all(format!("trace.{k}"), children)
        .with_scalar("terms", tr.len())
        .timed_since(start);
    Ok((tr, report))
}

/// Super-Poincaré with `g4` and `h3` adjoined, `dh₃ = g₄ - μ₄`. Adjoining
/// re-checks that μ₄ is closed in the Poincaré algebra.
pub fn resolved_poincare(sp: &SuperPoincare, mink: &SuperMinkowski) -> Result<CatalogAlgebra> {
    let algebra = resolve(&sp.algebra, mink)?;
    Ok(CatalogAlgebra::new(
        CatalogTag::ResolvedPoincare,
        algebra,
        "super-Poincare d=11 with g4 closed and dh3 = g4 - mu4",
    ))
}

/// `g₄ ↦ g₄`, `g₇ ↦ (h₃ + α tr ω³)(g₄ + μ₄) + (1/c)μ₇ + β tr ω⁷` from CE(𝔰⁴)
/// to the resolved super-Poincaré algebra. `trace7` is required when
/// `β ≠ 0`.
#[allow(clippy::too_many_arguments)]
pub fn family_seven_cocycle(
    sp: &SuperPoincare,
    mink: &SuperMinkowski,
    resolved: &CatalogAlgebra,
    lift: &DgcaMorphism,
    trace3: &Element,
    trace7: Option<&Element>,
    alpha: &Q,
    beta: &Q,
    c: &Q,
) -> Result<(DgcaMorphism, Report)> {
    let start = Instant::now();
    let target = &resolved.algebra;
    let sig = target.signature();
    let g4 = Element::generator(sig, "g4")?;
    let h3 = Element::generator(sig, "h3")?;
    let mu4 = mink.brane_cocycle_in(sig, 2)?;
    let mu7 = mink.brane_cocycle_in(sig, 5)?;
    let tr3 = trace3.transport(sig)?;
    let mut image = &(&(&h3 + &tr3.scale(alpha)) * &(&g4 + &mu4)) + &mu7.scale(&c.recip());
    if !num_traits::Zero::is_zero(beta) {
        let tr7 = trace7
            .ok_or_else(|| crate::error::Error::Unsupported("β ≠ 0 needs tr(ω⁷)".to_string()))?
            .transport(sig)?;
        image = &image + &tr7.scale(beta);
    }
    let s4 = super::s4_model().algebra;
    let task = format!("family.{}.{}", format_q(alpha), format_q(beta));
    let morphism = DgcaMorphism::unchecked(&s4, target, vec![("g4", g4), ("g7", image)])?;
    let mut chain = morphism.check();
    chain.task = format!("{task}.chain_map");
    if !chain.passed() {
        return Err(crate::error::Error::ChainMapViolation {
            generator: chain.witness_label.clone().unwrap_or_default(),
            residual: Box::new(chain.witness.clone().unwrap_or_else(|| Element::zero(sig))),
        });
    }

    // ω ↦ 0 lands on the resolved super-Minkowski algebra and the lift
    let omegas: Vec<String> = sp.omega_ids().iter().map(|&g| sp.signature().name(g).to_string()).collect();
    let names: Vec<&str> = omegas.iter().map(String::as_str).collect();
    let restricted_algebra = target.set_generators_to_zero(&names)?;
    let lift_target = lift.target();
    let algebra_matches = restricted_algebra.same_as(lift_target);
    let quotient = DgcaMorphism::by_name(
        target,
        lift_target,
        omegas
            .iter()
            .map(|n| (n.as_str(), Element::zero(lift_target.signature())))
            .collect(),
    )?;
    let restricted = morphism.then(&quotient)?;
    let images_match = restricted.same_as(lift);
    let restriction = if algebra_matches && images_match {
        Report::pass(format!("{task}.restriction"))
    } else {
        Report::fail_with_note(
            format!("{task}.restriction"),
            format!("algebra matches: {algebra_matches}, images match: {images_match}"),
        )
    };
    let report = Report::all(task, vec![chain, restriction])
        .with_scalar("alpha", format_q(alpha))
        .with_scalar("beta", format_q(beta))
        .timed_since(start);
    Ok((morphism, report))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordRep;

    fn three() -> (SuperMinkowski, SuperPoincare) {
        let rep = CliffordRep::build(3, (1, 2)).unwrap();
        let m = SuperMinkowski::new(3, &rep).unwrap();
        let (sp, _) = super_poincare(&m).unwrap();
        (m, sp)
    }

    #[test]
    fn three_dimensional_poincare() {
        let (m, sp) = three();
        assert_eq!(sp.omega_ids().len(), 3);
        let r = sp.algebra.check_d_squared();
        assert!(r.passed(), "{:#?}", r.first_failure());
        // μ₃ stays closed with the Lorentz generators present
        let mu3 = m.brane_cocycle_in(sp.signature(), 1).unwrap();
        assert!(sp.algebra.apply_d(&mu3).unwrap().is_zero());
    }

    #[test]
    fn traces_in_three_dimensions() {
        let (_, sp) = three();
        let (tr3, report) = lorentz_trace(&sp, 3).unwrap();
        assert!(report.passed(), "{:#?}", report.first_failure());
        // so(2,1): tr(ω³) is a multiple of the single top monomial
        assert_eq!(tr3.len(), 1);
    }

    #[test]
    fn antisymmetric_lookup() {
        let (_, sp) = three();
        assert!(sp.omega_lower(1, 1).is_none());
        let (s, g) = sp.omega_lower(2, 0).unwrap();
        assert_eq!(s, -1);
        assert_eq!(sp.signature().name(g), "omega[0,2]");
        // ω^0_1 = η^{00} ω_{01}
        assert_eq!(sp.omega_mixed(0, 1).unwrap().0, -1);
    }
}
