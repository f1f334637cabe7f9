use fda_core::catalog::s4_model;
use fda_core::rathtpy::{flat_form_check, poly_de_rham};
use fda_core::DgcaMorphism;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn flat_form_check_agrees_with_raw_validation() {
    let s4 = s4_model().algebra;
    let r8 = poly_de_rham(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut flat, mut not_flat) = (0, 0);
    for _ in 0..100 {
        // closed 4-forms some of the time, arbitrary ones otherwise
        let omega4 = if rng.gen_bool(0.5) {
            r8.algebra.apply_d(&r8.random_form(&mut rng, 3, 2, 2)).unwrap()
        } else {
            r8.random_form(&mut rng, 4, 1, 2)
        };
        let omega7 = match rng.gen_range(0..3) {
            0 => r8.random_form(&mut rng, 7, 1, 2),
            1 => r8.primitive(&(&omega4 * &omega4)).unwrap_or_else(|_| r8.random_form(&mut rng, 7, 1, 1)),
            _ => fda_core::Element::zero(r8.signature()),
        };
        let images = vec![("g4", omega4), ("g7", omega7)];
        let wrapped = flat_form_check(&s4, &r8, images.clone()).is_ok();
        let raw = DgcaMorphism::new(&s4, &r8.algebra, images).is_ok();
        assert_eq!(wrapped, raw);
        if wrapped {
            flat += 1;
        } else {
            not_flat += 1;
        }
    }
    assert!(flat > 10 && not_flat > 10, "{flat} flat, {not_flat} not");
}
