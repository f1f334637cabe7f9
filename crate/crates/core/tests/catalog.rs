use fda_core::catalog::{super_minkowski, verify_relation, SuperMinkowski};
use fda_core::clifford::CliffordRep;
use fda_core::{Element, Error, Q};

#[test]
fn super_minkowski_shapes() {
    let r3 = CliffordRep::build(3, (1, 2)).unwrap();
    let m3 = super_minkowski(3, &r3).unwrap();
    assert_eq!(m3.algebra.signature().len(), 5);
    assert!(m3.algebra.check_d_squared().passed());
    assert!(matches!(super_minkowski(11, &r3), Err(Error::RepMismatch { .. })));

    let r11 = CliffordRep::build(11, (1, 10)).unwrap();
    let m11 = super_minkowski(11, &r11).unwrap();
    assert_eq!(m11.algebra.signature().len(), 43);
    assert!(m11.algebra.check_d_squared().passed());
}

#[test]
fn de_is_the_spinor_bilinear() {
    let rep = CliffordRep::build(11, (1, 10)).unwrap();
    let m = SuperMinkowski::new(11, &rep).unwrap();
    let sig = m.signature();
    for a in 0..11usize {
        // Σ_{αβ} (CΓ^a)_{αβ} ψ^α ψ^β, term by term
        let cg = rep.charge_conjugation().mul(rep.gamma(a));
        let mut expected = Element::zero(sig);
        for (al, be, v) in cg.nonzeros() {
            let raw = [(format!("psi[{}]", al + 1), 1u32), (format!("psi[{}]", be + 1), 1u32)];
            let raw: Vec<(&str, u32)> = raw.iter().map(|(n, k)| (n.as_str(), *k)).collect();
            expected = &expected + &Element::normalize(sig, &raw, Q::from_integer(v.into())).unwrap();
        }
        assert_eq!(m.algebra.d_of(&format!("e[{a}]")).unwrap(), &expected, "a={a}");
        assert!(m.algebra.d_of(&format!("psi[{}]", a + 1)).unwrap().is_zero());
    }
}

#[test]
fn vanishing_cocycles() {
    let rep = CliffordRep::build(11, (1, 10)).unwrap();
    let m = SuperMinkowski::new(11, &rep).unwrap();
    assert!(matches!(m.brane_cocycle(3), Err(Error::ZeroCocycle(3))));
    // C itself is antisymmetric, so ψ̄ψ vanishes too
    assert!(matches!(m.brane_cocycle(0), Err(Error::ZeroCocycle(0))));
    let mu4 = m.brane_cocycle(2).unwrap();
    assert!(!mu4.is_zero());
}

#[test]
fn three_dimensional_relation_is_trivially_proportional() {
    let rep = CliffordRep::build(3, (1, 2)).unwrap();
    let m = SuperMinkowski::new(3, &rep).unwrap();
    let mu3 = m.brane_cocycle(1).unwrap();
    let (c, d_mu3, _) = verify_relation(&m.algebra, &mu3, &mu3).unwrap();
    assert!(d_mu3.is_zero());
    assert_eq!(c, Q::from_integer(0.into()));
}
