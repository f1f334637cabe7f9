use std::sync::Arc;
use std::time::Instant;

use num_traits::One;

use super::{CatalogAlgebra, CatalogTag, SuperMinkowski};
use crate::dgca::SemifreeDgca;
use crate::error::{Error, Result};
use crate::graded::{format_q, Bidegree, Element, GeneratorDecl, Signature, Q};
use crate::morphism::{check_homotopy, ChainHomotopy, DgcaMorphism};
use crate::report::Report;

/// CE(𝔰⁴) = ℝ[g₄, g₇], `dg₇ = g₄ ∧ g₄`.
pub fn s4_model() -> CatalogAlgebra {
    let sig = Signature::new(vec![
        GeneratorDecl::new("g4", Bidegree::even(4)),
        GeneratorDecl::new("g7", Bidegree::even(7)),
    ])
    .expect("two generators");
    let g4 = Element::generator(&sig, "g4").expect("g4");
    let algebra = SemifreeDgca::new(sig, vec![("g7", &g4 * &g4)]).expect("s4 differential");
    CatalogAlgebra::new(CatalogTag::S4, algebra, "R[g4,g7], dg7 = g4^2")
}

/// Adjoin a closed `g4`, then `h3` with `dh₃ = g₄ - μ₄`. Fails with
/// `NotClosed` if μ₄ is not closed in `base`.
pub(crate) fn resolve(base: &SemifreeDgca, mink: &SuperMinkowski) -> Result<SemifreeDgca> {
    let with_g4 = base.adjoin_generator(
        GeneratorDecl::new("g4", Bidegree::even(4)),
        &Element::zero(base.signature()),
        &Q::one(),
    )?;
    let sig = with_g4.signature().clone();
    let mu4 = mink.brane_cocycle_in(&sig, 2)?;
    let g4 = Element::generator(&sig, "g4")?;
    with_g4.adjoin_generator(GeneratorDecl::new("h3", Bidegree::even(3)), &(&g4 - &mu4), &Q::one())
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub algebra: CatalogAlgebra,
    /// CE(res) → CE(ℝ^{10,1|32}): `h₃ ↦ 0`, `g₄ ↦ μ₄`.
    pub projection: DgcaMorphism,
    /// CE(ℝ^{10,1|32}) → CE(res).
    pub inclusion: DgcaMorphism,
    /// Homotopy between `id` and `ι∘p`: `g₄ ↦ h₃`.
    pub homotopy: ChainHomotopy,
    pub report: Report,
}

pub fn resolved_minkowski(mink: &SuperMinkowski) -> Result<Resolution> {
    let start = Instant::now();
    let res = Arc::new(resolve(&mink.algebra, mink)?);
    let mu4 = mink.brane_cocycle(2)?;
    let projection = DgcaMorphism::by_name(
        &res,
        &mink.algebra,
        vec![("h3", Element::zero(mink.signature())), ("g4", mu4)],
    )?;
    let inclusion = DgcaMorphism::by_name(&mink.algebra, &res, vec![])?;

    let p_after_i = inclusion.then(&projection)?;
    let id_mink = DgcaMorphism::identity(&mink.algebra);
    let retraction = if p_after_i.same_as(&id_mink) {
        Report::pass("resolution.p_after_i")
    } else {
        let g = (0..mink.signature().len() as u32)
            .find(|&g| p_after_i.images()[g as usize] != id_mink.images()[g as usize])
            .expect("some generator differs");
        let residual = &p_after_i.images()[g as usize] - &id_mink.images()[g as usize];
        Report::fail("resolution.p_after_i", mink.signature().name(g), residual)
    };

    let id_res = DgcaMorphism::identity(&res);
    let i_after_p = projection.then(&inclusion)?;
    let h3 = Element::generator(res.signature(), "h3")?;
    let homotopy = ChainHomotopy::new(&id_res, &i_after_p, vec![("g4", h3)])?;
    let mut equivalence = check_homotopy(&id_res, &i_after_p, &homotopy);
    equivalence.task = "resolution.homotopy".to_string();

    let report = Report::all("resolution", vec![retraction, equivalence])
        .with_scalar("generators", res.signature().len())
        .timed_since(start);
    Ok(Resolution {
        algebra: CatalogAlgebra {
            tag: CatalogTag::ResolvedMink,
            algebra: res,
            provenance: "super-Minkowski d=11 with g4 closed and dh3 = g4 - mu4".to_string(),
        },
        projection,
        inclusion,
        homotopy,
        report,
    })
}

/// The lift `g₄ ↦ g₄`, `g₇ ↦ h₃∧(g₄+μ₄) + (1/c)μ₇` of μ₄ through 𝔰⁴, with its
/// chain-map check and the composites through the fiber maps.
pub fn equivariant_lift(
    mink: &SuperMinkowski,
    resolution: &Resolution,
    m2: &CatalogAlgebra,
    m5: &Element,
    c: &Q,
) -> Result<(DgcaMorphism, Report)> {
    let start = Instant::now();
    let s4 = s4_model().algebra;
    let res = &resolution.algebra.algebra;
    let sig = res.signature();
    let g4 = Element::generator(sig, "g4")?;
    let h3 = Element::generator(sig, "h3")?;
    let mu4 = mink.brane_cocycle_in(sig, 2)?;
    let mu7 = mink.brane_cocycle_in(sig, 5)?;
    let g7_image = &(&h3 * &(&g4 + &mu4)) + &mu7.scale(&c.recip());

    // the g₇ check, spelled out: d(image) against g₄∧g₄
    let d_image = res.apply_d(&g7_image)?;
    let g4_sq = &g4 * &g4;
    let on_g7 = Report::from_residual("lift.g7", "g7", &d_image - &g4_sq)
        .with_scalar("d_image_terms", d_image.len());

    let lift = match DgcaMorphism::new(&s4, res, vec![("g4", g4.clone()), ("g7", g7_image.clone())]) {
        Ok(f) => f,
        Err(Error::ChainMapViolation {
            generator,
            residual,
        }) => {
            let report = Report::fail("lift", generator, *residual).with_child(on_g7);
            return Err(Error::ChainMapViolation {
                generator: report.witness_label.clone().unwrap_or_default(),
                residual: Box::new(report.witness.clone().expect("residual")),
            });
        }
        Err(e) => return Err(e),
    };

    // over ℝ[3]: ℝ[g₄] → 𝔰⁴ → CE(res) is g₄ ↦ g₄
    let line = super::coefficient_line(2).algebra;
    let base = DgcaMorphism::new(&line, &s4, vec![("g4", Element::generator(s4.signature(), "g4")?)])?;
    let over = base.then(&lift)?;
    let over_report = Report::from_residual("lift.over_base", "g4", over.image("g4")? - &g4);

    // project to super-Minkowski: g₄ ↦ μ₄
    let projected = base.then(&lift)?.then(&resolution.projection)?;
    let mu4_mink = mink.brane_cocycle(2)?;
    let projected_report =
        Report::from_residual("lift.projection", "g4", projected.image("g4")? - &mu4_mink);

    // restrict to 𝔪2𝔟𝔯𝔞𝔫𝔢 along h₃ ↦ h₃, g₄ ↦ 0: g₇ lands on the M5 cocycle
    let m2a = &m2.algebra;
    let to_m2 = DgcaMorphism::by_name(res, m2a, vec![("g4", Element::zero(m2a.signature()))])?;
    let restricted = lift.then(&to_m2)?;
    let restricted_report = Report::all(
        "lift.restriction",
        vec![
            Report::from_residual("lift.restriction.g4", "g4", restricted.image("g4")?.clone()),
            Report::from_residual(
                "lift.restriction.g7",
                "g7",
                restricted.image("g7")? - &m5.transport(m2a.signature())?,
            ),
        ],
    );

    let report = Report::all(
        "lift",
        vec![Report::pass("lift.chain_map"), on_g7, over_report, projected_report, restricted_report],
    )
    .with_scalar("inverse_c", format_q(&c.recip()))
    .with_scalar("g7_image_terms", g7_image.len())
    .timed_since(start);
    Ok((lift, report))
}
