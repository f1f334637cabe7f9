use std::sync::Arc;

use fda_core::catalog::{m2brane, s4_model, super_minkowski, super_poincare, SuperMinkowski};
use fda_core::clifford::CliffordRep;
use fda_core::linalg::{differential_matrix, DEFAULT_CAP};
use fda_core::rathtpy::sphere_model;
use fda_core::SemifreeDgca;

fn consecutive_compose_to_zero(name: &str, a: &Arc<SemifreeDgca>, top: u32) {
    for k in 0..top {
        let first = differential_matrix(a, k, DEFAULT_CAP).unwrap();
        let second = differential_matrix(a, k + 1, DEFAULT_CAP).unwrap();
        assert!(second.mul(&first).is_zero(), "{name}: d∘d ≠ 0 from degree {k}");
    }
}

#[test]
fn differential_matrices_square_to_zero() {
    consecutive_compose_to_zero("s4", &s4_model().algebra, 14);
    for n in [2, 3, 4, 7] {
        consecutive_compose_to_zero("sphere", &sphere_model(n).unwrap().algebra, 3 * n);
    }

    let r3 = CliffordRep::build(3, (1, 2)).unwrap();
    let m3 = SuperMinkowski::new(3, &r3).unwrap();
    consecutive_compose_to_zero("mink3", &m3.algebra, 4);
    let (p3, _) = super_poincare(&m3).unwrap();
    consecutive_compose_to_zero("poincare3", &p3.algebra, 3);

    let r11 = CliffordRep::build(11, (1, 10)).unwrap();
    let m11 = super_minkowski(11, &r11).unwrap();
    consecutive_compose_to_zero("mink11", &m11.algebra, 2);
    let mk = SuperMinkowski::new(11, &r11).unwrap();
    consecutive_compose_to_zero("m2brane", &m2brane(&mk).unwrap().algebra, 2);
}
