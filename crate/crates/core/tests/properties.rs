use std::sync::Arc;

use fda_core::graded::{Factor, Parity};
use fda_core::morphism::{check_homotopy, compose};
use fda_core::rathtpy::{poly_de_rham, PolyDeRham};
use fda_core::{
    Bidegree, ChainHomotopy, DgcaMorphism, Element, GeneratorDecl, Monomial, Signature, Q,
};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn mixed() -> Arc<Signature> {
    let mut decls = Vec::new();
    for a in 0..4 {
        decls.push(GeneratorDecl::indexed("e", &[a], Bidegree::even(1)));
    }
    for a in 1..=3 {
        decls.push(GeneratorDecl::indexed("psi", &[a], Bidegree::odd(1)));
    }
    decls.push(GeneratorDecl::new("b", Bidegree::odd(2)));
    decls.push(GeneratorDecl::new("h3", Bidegree::even(3)));
    decls.push(GeneratorDecl::new("g4", Bidegree::even(4)));
    decls.push(GeneratorDecl::new("q", Bidegree::odd(0)));
    Signature::new(decls).unwrap()
}

/// Sort by adjacent transpositions, paying the Koszul sign for each swap.
fn oracle(sig: &Arc<Signature>, raw: &[String], coeff: i64) -> Element {
    let mut ids: Vec<u32> = raw.iter().map(|n| sig.id(n).unwrap()).collect();
    let mut negative = false;
    for i in 0..ids.len() {
        for j in 0..ids.len() - 1 - i {
            if ids[j] > ids[j + 1] {
                let (a, b) = (sig.bidegree(ids[j]), sig.bidegree(ids[j + 1]));
                let parity = |p: Parity| u32::from(p == Parity::Odd);
                if (a.degree * b.degree + parity(a.parity) * parity(b.parity)) % 2 == 1 {
                    negative = !negative;
                }
                ids.swap(j, j + 1);
            }
        }
    }
    let mut factors: Vec<Factor> = Vec::new();
    for id in ids {
        match factors.last_mut() {
            Some(f) if f.gen == id => {
                if sig.squares_to_zero(id) {
                    return Element::zero(sig);
                }
                f.exp += 1;
            }
            _ => factors.push(Factor { gen: id, exp: 1 }),
        }
    }
    let c = Q::from_integer(if negative { -coeff } else { coeff }.into());
    Element::from_monomial(sig, Monomial::from_sorted(factors), c)
}

fn normalize(sig: &Arc<Signature>, raw: &[String], coeff: i64) -> Element {
    let pairs: Vec<(&str, u32)> = raw.iter().map(|n| (n.as_str(), 1)).collect();
    Element::normalize(sig, &pairs, Q::from_integer(coeff.into())).unwrap()
}

fn raw_list() -> impl Strategy<Value = Vec<String>> {
    let names: Vec<String> = mixed().generators().iter().map(|g| g.name.clone()).collect();
    prop::collection::vec(prop::sample::select(names), 0..6)
}

fn element() -> impl Strategy<Value = Element> {
    prop::collection::vec((raw_list(), -3i64..4), 0..5).prop_map(|terms| {
        let sig = mixed();
        terms
            .iter()
            .fold(Element::zero(&sig), |acc, (raw, c)| &acc + &oracle(&sig, raw, *c))
    })
}

/// Sums of monomials sharing one bidegree: each slot draws from one class.
fn homogeneous() -> impl Strategy<Value = Element> {
    let classes: Vec<Vec<&'static str>> = vec![
        vec!["e[0]", "e[1]", "e[2]", "e[3]"],
        vec!["psi[1]", "psi[2]", "psi[3]"],
        vec!["h3"],
        vec!["g4"],
        vec!["b"],
    ];
    (prop::collection::vec(0usize..5, 0..4), prop::collection::vec((any::<u64>(), -3i64..4), 1..4)).prop_map(
        move |(slots, draws)| {
            let sig = mixed();
            draws.iter().fold(Element::zero(&sig), |acc, (seed, c)| {
                let mut s = *seed;
                let raw: Vec<String> = slots
                    .iter()
                    .map(|&k| {
                        let class = &classes[k];
                        let pick = (s % class.len() as u64) as usize;
                        s /= 7;
                        class[pick].to_string()
                    })
                    .collect();
                &acc + &oracle(&sig, &raw, *c)
            })
        },
    )
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn normalize_matches_transposition_oracle(raw in raw_list(), c in -5i64..6) {
        let sig = mixed();
        prop_assert_eq!(normalize(&sig, &raw, c), oracle(&sig, &raw, c));
    }

    #[test]
    fn product_matches_oracle(a in raw_list(), b in raw_list()) {
        let sig = mixed();
        let mut joined = a.clone();
        joined.extend(b.iter().cloned());
        let product = &normalize(&sig, &a, 1) * &normalize(&sig, &b, 1);
        prop_assert_eq!(product, oracle(&sig, &joined, 1));
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn shuffles_only_change_the_sign(raw in raw_list(), perm in any::<u64>()) {
        let sig = mixed();
        let mut shuffled = raw.clone();
        let mut s = perm;
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
            s /= 13;
        }
        let base = normalize(&sig, &raw, 1);
        let moved = normalize(&sig, &shuffled, 1);
        prop_assert!(moved == base || moved == base.neg());
        prop_assert_eq!(moved, oracle(&sig, &shuffled, 1));
    }

    #[test]
    fn associative_and_unital(a in element(), b in element(), c in element()) {
        let sig = mixed();
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&Element::one(&sig) * &a, a.clone());
        prop_assert_eq!(&a * &Element::zero(&sig), Element::zero(&sig));
    }

    #[test]
    fn graded_commutative(a in homogeneous(), b in homogeneous()) {
        let (Some(x), Some(y)) = (a.bidegree(), b.bidegree()) else {
            return Ok(());
        };
        let ab = &a * &b;
        let ba = &b * &a;
        if x.koszul(y) == 1 {
            prop_assert_eq!(ab, ba.neg());
        } else {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn json_round_trip(a in element()) {
        let sig = mixed();
        let back = Element::from_json(&sig, &a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }
}

/// Pullback along a polynomial map ℝ³ → ℝ³ with the given coordinate
/// polynomials; always a chain map.
fn pullback(target: &PolyDeRham, source: &PolyDeRham, polys: &[String]) -> DgcaMorphism {
    let mut images = Vec::new();
    let names: Vec<(String, String)> = (1..=3).map(|i| (format!("x[{i}]"), format!("dx[{i}]"))).collect();
    for (i, p) in polys.iter().enumerate() {
        let f = target.parse(p).unwrap();
        let df = target.algebra.apply_d(&f).unwrap();
        images.push((names[i].0.as_str(), f));
        images.push((names[i].1.as_str(), df));
    }
    DgcaMorphism::new(&source.algebra, &target.algebra, images).unwrap()
}

fn polynomial() -> impl Strategy<Value = String> {
    prop::collection::vec((-3i64..4, 0u32..3, 0u32..3, 0u32..2), 1..4).prop_map(|terms| {
        terms
            .iter()
            .map(|(c, a, b, e)| format!("({c})*x1^{a}*x2^{b}*x3^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn random_form(omega: &PolyDeRham, seed: u64, k: usize) -> Element {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    omega.random_form(&mut rng, k, 2, 3)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn chain_maps_commute_with_d_everywhere(polys in prop::collection::vec(polynomial(), 3), seed in any::<u64>(), k in 0usize..4) {
        let omega = poly_de_rham(3).unwrap();
        let f = pullback(&omega, &omega, &polys);
        let m = random_form(&omega, seed, k);
        let lhs = omega.algebra.apply_d(&f.apply(&m).unwrap()).unwrap();
        let rhs = f.apply(&omega.algebra.apply_d(&m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let s = ChainHomotopy::zero(&f, &f).unwrap();
        prop_assert!(check_homotopy(&f, &f, &s).passed());
    }

    #[test]
    fn composition_is_associative(
        p in prop::collection::vec(polynomial(), 3),
        q in prop::collection::vec(polynomial(), 3),
        r in prop::collection::vec(polynomial(), 3),
    ) {
        let omega = poly_de_rham(3).unwrap();
        let (f, g, h) = (pullback(&omega, &omega, &p), pullback(&omega, &omega, &q), pullback(&omega, &omega, &r));
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert!(left.same_as(&right));
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn parallel_product_matches_sequential(seed in any::<u64>()) {
        let omega = poly_de_rham(6).unwrap();
        let a = random_form(&omega, seed, 2);
        let b = random_form(&omega, seed ^ 0x5eed, 2);
        // widen both past the parallel threshold
        let wide = |x: &Element, s: u64| {
            (0..200).fold(x.clone(), |acc, i| &acc + &random_form(&omega, s.wrapping_add(i), 2))
        };
        let (a, b) = (wide(&a, seed), wide(&b, !seed));
        prop_assume!(a.len() * b.len() > 1 << 14);
        prop_assert_eq!(a.try_mul(&b).unwrap(), a.mul_sequential(&b));
    }
}
