//! Named constructions: super-Minkowski and super-Poincaré CE algebras, the
//! brane cocycles μ_{p+2}, the M2/M5 extension data, the resolution of
//! super-Minkowski space and the 𝔰⁴-valued lifts.

mod minkowski;
mod poincare;
mod resolved;
mod scan;

use std::sync::Arc;

use serde::Serialize;

pub use minkowski::{
    m2brane, m5_cocycle, super_minkowski, verify_m5_relation, verify_relation, M5Relation,
    SuperMinkowski,
};
pub use poincare::{
    family_seven_cocycle, lorentz_trace, resolved_poincare, super_poincare, SuperPoincare,
};
pub use resolved::{equivariant_lift, resolved_minkowski, s4_model, Resolution};
pub use scan::{verify_brane_scan_entry, BraneScanEntry, Nontrivial};




use crate::dgca::SemifreeDgca;
use crate::graded::{Element, GenId, Monomial, Signature, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum CatalogTag {
    SuperMink { d: usize, n: usize },
    M2brane,
    ResolvedMink,
    SuperPoincare,
    ResolvedPoincare,
    S4,
    CoefficientLine { p: usize },
}

#[derive(Clone, Debug)]
pub struct CatalogAlgebra {
    pub tag: CatalogTag,
    pub algebra: Arc<SemifreeDgca>,
    pub provenance: String,
}

impl CatalogAlgebra {
    pub fn new(tag: CatalogTag, algebra: SemifreeDgca, provenance: impl Into<String>) -> Self {
        CatalogAlgebra {
            tag,
            algebra: Arc::new(algebra),
            provenance: provenance.into(),
        }
    }
}

/// `coeff · g₁ g₂ ⋯` for generators listed in any order.
pub(crate) fn product(sig: &Arc<Signature>, gens: &[GenId], coeff: Q) -> Element {
    let mut mono = Monomial::one();
    let mut negative = false;
    for &g in gens {
        match sig.mul_monomials(&mono, &Monomial::generator(g)) {
            Some((m, n)) => {
                mono = m;
                negative ^= n;
            }
            None => return Element::zero(sig),
        }
    }
    Element::from_monomial(sig, mono, if negative { -coeff } else { coeff })
}

/// Coefficient line `ℝ[g_{p+2}]` with zero differential.
pub fn coefficient_line(p: usize) -> CatalogAlgebra {
    use crate::graded::{Bidegree, GeneratorDecl};
    let name = format!("g{}", p + 2);
    let sig = Signature::new(vec![GeneratorDecl::new(name, Bidegree::even(p as u32 + 2))])
        .expect("one generator");
    CatalogAlgebra::new(
        CatalogTag::CoefficientLine { p },
        SemifreeDgca::new(sig, vec![]).expect("closed generator"),
        format!("R[g{}], zero differential", p + 2),
    )
}
