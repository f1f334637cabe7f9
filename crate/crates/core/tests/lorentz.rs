use fda_core::catalog::{
    equivariant_lift, family_seven_cocycle, lorentz_trace, m2brane, m5_cocycle, resolved_minkowski,
    resolved_poincare, super_poincare, SuperMinkowski,
};
use fda_core::clifford::CliffordRep;
use fda_core::{Element, SemifreeDgca, Q};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[test]
fn eleven_dimensional_poincare_suite() {
    let rep = CliffordRep::build(11, (1, 10)).unwrap();
    let m = SuperMinkowski::new(11, &rep).unwrap();
    let (sp, _) = super_poincare(&m).unwrap();
    assert_eq!(sp.omega_ids().len(), 55);
    let d2 = sp.algebra.check_d_squared();
    assert!(d2.passed(), "{:#?}", d2.first_failure());

    let (tr3, traces) = lorentz_trace(&sp, 3).unwrap();
    assert!(traces.passed(), "{:#?}", traces.first_failure());
    assert!(!tr3.is_zero());

    let resolved = resolved_poincare(&sp, &m).unwrap();
    assert!(resolved.algebra.check_d_squared().passed());

    let res = resolved_minkowski(&m).unwrap();
    let m2 = m2brane(&m).unwrap();
    let c = q(15);
    let (m5, _) = m5_cocycle(&m, &m2, &c).unwrap();
    let (lift, _) = equivariant_lift(&m, &res, &m2, &m5, &c).unwrap();
    for alpha in [q(0), q(1), Q::new((-3).into(), 7.into())] {
        let (_, report) =
            family_seven_cocycle(&sp, &m, &resolved, &lift, &tr3, None, &alpha, &q(0), &c).unwrap();
        assert!(report.passed(), "alpha={alpha}: {:#?}", report.first_failure());
    }

    // corrupt one dω image
    let sig = sp.signature().clone();
    let images: Vec<(String, Element)> = sig
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut img = sp.algebra.d_gen(i as u32).clone();
            if g.name == "omega[0,1]" {
                img = img.scale(&q(2));
            }
            (g.name.clone(), img)
        })
        .collect();
    let corrupted =
        SemifreeDgca::new(sig, images.iter().map(|(n, e)| (n.as_str(), e.clone())).collect()).unwrap();
    let r = corrupted.check_d_squared();
    assert!(!r.passed());
    assert!(!r.witness.unwrap().is_zero());
}
