//! Sullivan models of spheres, the Hopf pushout for 𝔰⁴, and flat
//! algebra-valued forms on polynomial de Rham complexes.

mod expr;

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{coefficient_line, s4_model};
use crate::dgca::SemifreeDgca;
use crate::error::{Error, Result};
use crate::graded::{qi, Bidegree, Element, GenId, GeneratorDecl, Monomial, Signature, Q};
use crate::linalg::{cohomology_dims, DEFAULT_CAP};
use crate::morphism::DgcaMorphism;
use crate::report::Report;

pub use expr::parse_element;

#[derive(Clone, Debug)]
pub struct SphereModel {
    pub n: u32,
    pub algebra: Arc<SemifreeDgca>,
    /// Cohomology dimensions in degrees `0..=3n`.
    pub dims: Vec<usize>,
}

/// Minimal model of `S^n`: one closed `g_n` for odd `n`; `g_n`, `g_{2n-1}`
/// with `dg_{2n-1} = g_n²` for even `n`.
pub fn sphere_model(n: u32) -> Result<SphereModel> {
    if n == 0 {
        return Err(Error::Unsupported("sphere dimension must be positive".to_string()));
    }
    let gn = format!("g{n}");
    let algebra = if n % 2 == 1 {
        let sig = Signature::new(vec![GeneratorDecl::new(gn, Bidegree::even(n))])?;
        SemifreeDgca::new(sig, vec![])?
    } else {
        let top = format!("g{}", 2 * n - 1);
        let sig = Signature::new(vec![
            GeneratorDecl::new(gn.clone(), Bidegree::even(n)),
            GeneratorDecl::new(top.clone(), Bidegree::even(2 * n - 1)),
        ])?;
        let g = Element::generator(&sig, &gn)?;
        SemifreeDgca::new(sig, vec![(top.as_str(), &g * &g)])?
    };
    let algebra = Arc::new(algebra);
    let dims = cohomology_dims(&algebra, 3 * n, DEFAULT_CAP)?;
    let expected: Vec<usize> = (0..=3 * n).map(|k| usize::from(k == 0 || k == n)).collect();
    if dims != expected {
        return Err(Error::Unsupported(format!(
            "S^{n} model has cohomology {dims:?}, expected {expected:?}"
        )));
    }
    Ok(SphereModel { n, algebra, dims })
}

/// `ℝ[g₄] → CE(𝔰⁴) → ℝ[g₇]`: the pushout along `g₄ ↦ 0` is `ℝ[g₇]` with zero
/// differential and the composite kills `g₄`.
pub fn hopf_sequence_check() -> Report {
    let start = Instant::now();
    let s4 = s4_model().algebra;
    let run = || -> Result<Report> {
        let pushout = Arc::new(s4.set_generators_to_zero(&["g4"])?);
        let fiber = sphere_model(7)?.algebra;
        let pushout_report = if pushout.same_as(&fiber) {
            Report::pass("hopf.pushout")
        } else {
            Report::fail_with_note("hopf.pushout", "pushout differs from R[g7] with zero differential")
        };
        let base = coefficient_line(2).algebra;
        let include = DgcaMorphism::new(&base, &s4, vec![("g4", s4.gen("g4")?)])?;
        let project = DgcaMorphism::by_name(&s4, &pushout, vec![("g4", Element::zero(pushout.signature()))])?;
        let composite = include.then(&project)?;
        let composite_report =
            Report::from_residual("hopf.composite", "g4", composite.image("g4")?.clone());
        Ok(Report::all(
            "hopf",
            vec![
                pushout_report,
                Report::pass("hopf.base_inclusion"),
                project.check(),
                composite_report,
            ],
        ))
    };
    match run() {
        Ok(r) => r.timed_since(start),
        Err(e) => Report::fail_with_note("hopf", e.to_string()).timed_since(start),
    }
}

/// Polynomial differential forms on ℝⁿ: `x[i]` in degree 0, `dx[i]` in
/// degree 1, `d x[i] = dx[i]`.
#[derive(Clone, Debug)]
pub struct PolyDeRham {
    pub n: usize,
    pub algebra: Arc<SemifreeDgca>,
    x: Vec<GenId>,
    dx: Vec<GenId>,
}

pub fn poly_de_rham(n: usize) -> Result<PolyDeRham> {
    if n == 0 {
        return Err(Error::Unsupported("dimension must be positive".to_string()));
    }
    let mut decls = Vec::with_capacity(2 * n);
    for i in 1..=n as i64 {
        decls.push(GeneratorDecl::indexed("x", &[i], Bidegree::even(0)));
        decls.push(GeneratorDecl::indexed("dx", &[i], Bidegree::even(1)));
    }
    let sig = Signature::new(decls)?;
    let names: Vec<(String, String)> = (1..=n).map(|i| (format!("x[{i}]"), format!("dx[{i}]"))).collect();
    let images = names
        .iter()
        .map(|(x, dx)| Ok((x.as_str(), Element::generator(&sig, dx)?)))
        .collect::<Result<Vec<_>>>()?;
    let algebra = SemifreeDgca::new(sig.clone(), images)?;
    let x = (1..=n as i64).map(|i| sig.indexed_id("x", &[i])).collect::<Result<_>>()?;
    let dx = (1..=n as i64).map(|i| sig.indexed_id("dx", &[i])).collect::<Result<_>>()?;
    Ok(PolyDeRham {
        n,
        algebra: Arc::new(algebra),
        x,
        dx,
    })
}

impl PolyDeRham {
    pub fn signature(&self) -> &Arc<Signature> {
        self.algebra.signature()
    }

    pub fn parse(&self, input: &str) -> Result<Element> {
        parse_element(self.signature(), input)
    }

    pub fn x(&self, i: usize) -> Element {
        Element::gen(self.signature(), self.x[i - 1])
    }

    pub fn dx(&self, i: usize) -> Element {
        Element::gen(self.signature(), self.dx[i - 1])
    }

    /// Split a monomial into `(x-exponents by coordinate, dx coordinates)`.
    fn split(&self, m: &Monomial) -> (Vec<u32>, Vec<usize>) {
        let mut alpha = vec![0; self.n];
        let mut forms = Vec::new();
        for f in m.factors() {
            if let Some(i) = self.x.iter().position(|&g| g == f.gen) {
                alpha[i] = f.exp;
            } else if let Some(i) = self.dx.iter().position(|&g| g == f.gen) {
                forms.push(i);
            }
        }
        (alpha, forms)
    }

    /// Radial contraction `H(x^α dx_{i₁}⋯dx_{i_k}) = 1/(|α|+k) Σ_r (-1)^{r-1}
    /// x_{i_r} x^α dx_{I∖i_r}`, linear over ℚ. Satisfies `dH + Hd = id` on
    /// forms of positive total polynomial degree.
    pub fn radial_homotopy(&self, form: &Element) -> Element {
        let sig = self.signature();
        let mut out = Element::zero(sig);
        for (m, c) in form.terms() {
            let (alpha, forms) = self.split(m);
            let k = forms.len();
            let weight: u32 = alpha.iter().sum::<u32>() + k as u32;
            if k == 0 || weight == 0 {
                continue;
            }
            let poly = self.x_power(&alpha);
            let scale = c / Q::from_integer(weight.into());
            for r in 0..k {
                let mut rest = Element::one(sig);
                for (s, &i) in forms.iter().enumerate() {
                    if s != r {
                        rest = &rest * &Element::gen(sig, self.dx[i]);
                    }
                }
                let sign = if r % 2 == 0 { qi(1) } else { qi(-1) };
                let term = &(&Element::gen(sig, self.x[forms[r]]) * &poly) * &rest;
                out = &out + &term.scale(&(&scale * &sign));
            }
        }
        out
    }

    fn x_power(&self, alpha: &[u32]) -> Element {
        let sig = self.signature();
        alpha
            .iter()
            .enumerate()
            .fold(Element::one(sig), |acc, (i, &e)| &acc * &Element::gen(sig, self.x[i]).pow(e))
    }

    /// A primitive of a closed form of positive degree, from the radial
    /// homotopy; `NotClosed` otherwise.
    pub fn primitive(&self, form: &Element) -> Result<Element> {
        let d = self.algebra.apply_d(form)?;
        if !d.is_zero() {
            return Err(Error::NotClosed { residual: Box::new(d) });
        }
        let h = self.radial_homotopy(form);
        debug_assert_eq!(&self.algebra.apply_d(&h)?, form);
        Ok(h)
    }

    /// Random form of form degree `k` with polynomial coefficients of degree
    /// at most `poly_degree`.
    pub fn random_form(&self, rng: &mut impl Rng, k: usize, poly_degree: u32, terms: usize) -> Element {
        let sig = self.signature();
        let mut out = Element::zero(sig);
        for _ in 0..terms {
            let mut coords: Vec<usize> = (0..self.n).collect();
            let mut form = Element::one(sig);
            for _ in 0..k.min(self.n) {
                let pick = coords.swap_remove(rng.gen_range(0..coords.len()));
                form = &form * &Element::gen(sig, self.dx[pick]);
            }
            let total = rng.gen_range(0..=poly_degree);
            let mut alpha = vec![0u32; self.n];
            for _ in 0..total {
                alpha[rng.gen_range(0..self.n)] += 1;
            }
            let c = Q::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
            out = &out + &(&self.x_power(&alpha) * &form).scale(&c);
        }
        out
    }
}

/// A chain map `CE(𝔤) → Ω•`: a flat 𝔤-valued form.
#[derive(Clone, Debug)]
pub struct FlatGForm {
    pub model: Arc<SemifreeDgca>,
    pub target: Arc<SemifreeDgca>,
    pub assignment: DgcaMorphism,
}

/// Validate an assignment of forms to the generators of `model`. Every
/// image must be of even parity and of the generator's degree; flatness is
/// exactly the chain-map condition.
pub fn flat_form_check(
    model: &Arc<SemifreeDgca>,
    target: &PolyDeRham,
    images: Vec<(&str, Element)>,
) -> std::result::Result<FlatGForm, Report> {
    let sig = model.signature();
    for (name, img) in &images {
        let Ok(id) = sig.id(name) else {
            return Err(Report::fail_with_note("flat", format!("unknown generator {name}")));
        };
        if sig.bidegree(id).parity != crate::graded::Parity::Even {
            return Err(Report::fail_with_note("flat", format!("{name} is not of even parity")));
        }
        if img.bidegrees().iter().any(|b| b.parity != crate::graded::Parity::Even) {
            return Err(Report::fail_with_note("flat", format!("image of {name} has odd parity")));
        }
    }
    match DgcaMorphism::new(model, &target.algebra, images) {
        Ok(assignment) => Ok(FlatGForm {
            model: model.clone(),
            target: target.algebra.clone(),
            assignment,
        }),
        Err(Error::ChainMapViolation { generator, residual }) => {
            Err(Report::fail("flat", generator, *residual))
        }
        Err(e) => Err(Report::fail_with_note("flat", e.to_string())),
    }
}

/// Parse a JSON object `{generator: expression}` into images over `target`.
pub fn assignment_from_json(target: &PolyDeRham, value: &serde_json::Value) -> Result<Vec<(String, Element)>> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("assignment must be a JSON object".to_string()))?;
    obj.iter()
        .map(|(k, v)| {
            let text = v
                .as_str()
                .ok_or_else(|| Error::Parse(format!("expression for {k} must be a string")))?;
            Ok((k.clone(), target.parse(text)?))
        })
        .collect()
}

/// Sampled check of the fiber sequence `Ω⁷_cl → Ω_flat(−; 𝔰⁴) → Ω⁴_cl` on
/// `target`: flat pairs project to closed 4-forms, and `(0, ω₇)` is flat
/// exactly when `ω₇` is closed.
pub fn forms_fiber_check(target: &PolyDeRham, samples: usize, seed: u64) -> Report {
    let start = Instant::now();
    let s4 = s4_model().algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = &target.algebra;
    let zero = Element::zero(target.signature());
    let mut failures = Vec::new();
    let (mut flat_pairs, mut closed_in_fiber, mut rejected) = (0usize, 0usize, 0usize);
    for i in 0..samples {
        // a flat pair: ω₄ = dθ₃, ω₇ = H(ω₄²) + dθ₆
        let theta3 = target.random_form(&mut rng, 3, 2, 2);
        let omega4 = d.apply_d(&theta3).expect("same signature");
        let square = &omega4 * &omega4;
        let theta6 = target.random_form(&mut rng, 6, 2, 2);
        let omega7 = &target.primitive(&square).expect("ω₄² is closed") + &d.apply_d(&theta6).expect("same signature");
        match flat_form_check(&s4, target, vec![("g4", omega4.clone()), ("g7", omega7)]) {
            Ok(flat) => {
                flat_pairs += 1;
                let projected = flat.assignment.image("g4").expect("g4").clone();
                if !d.apply_d(&projected).expect("same signature").is_zero() {
                    failures.push(format!("sample {i}: projection not closed"));
                }
            }
            Err(r) => failures.push(format!("sample {i}: flat pair rejected: {:?}", r.witness_label)),
        }

        // the fiber over ω₄ = 0
        let closed7 = d.apply_d(&target.random_form(&mut rng, 6, 2, 3)).expect("same signature");
        match flat_form_check(&s4, target, vec![("g4", zero.clone()), ("g7", closed7)]) {
            Ok(_) => closed_in_fiber += 1,
            Err(_) => failures.push(format!("sample {i}: closed 7-form outside the fiber")),
        }
        let any7 = target.random_form(&mut rng, 7, 2, 3);
        let is_closed = d.apply_d(&any7).expect("same signature").is_zero();
        let accepted = flat_form_check(&s4, target, vec![("g4", zero.clone()), ("g7", any7)]).is_ok();
        if accepted != is_closed {
            failures.push(format!("sample {i}: membership {accepted} but closed {is_closed}"));
        }
        if !accepted {
            rejected += 1;
        }
    }
    let report = if failures.is_empty() {
        Report::pass("flat.fiber")
    } else {
        let mut r = Report::fail_with_note("flat.fiber", failures[0].clone());
        for f in &failures[1..] {
            r = r.with_note(f.clone());
        }
        r
    };
    report
        .with_scalar("samples", samples)
        .with_scalar("flat_pairs", flat_pairs)
        .with_scalar("closed_in_fiber", closed_in_fiber)
        .with_scalar("non_closed_rejected", rejected)
        .timed_since(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres() {
        assert_eq!(sphere_model(4).unwrap().dims, vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        for n in [2, 3, 7] {
            let s = sphere_model(n).unwrap();
            assert_eq!(s.dims.iter().sum::<usize>(), 2, "n={n}");
            assert_eq!(s.dims[n as usize], 1);
        }
        assert_eq!(sphere_model(7).unwrap().algebra.signature().len(), 1);
        assert!(sphere_model(0).is_err());
    }

    #[test]
    fn hopf() {
        let r = hopf_sequence_check();
        assert!(r.passed(), "{:#?}", r.first_failure());
    }

    #[test]
    fn de_rham_basics() {
        let one = poly_de_rham(1).unwrap();
        assert_eq!(one.algebra.apply_d(&one.x(1)).unwrap(), one.dx(1));
        assert!(one.algebra.apply_d(&one.dx(1)).unwrap().is_zero());
        let two = poly_de_rham(2).unwrap();
        let form = &two.x(1) * &two.dx(2);
        assert_eq!(two.algebra.apply_d(&form).unwrap(), &two.dx(1) * &two.dx(2));
        assert!(two.algebra.check_d_squared().passed());
    }

    #[test]
    fn volume_form_primitives() {
        let r8 = poly_de_rham(8).unwrap();
        let omega = r8.parse("dx1*dx2*dx3*dx4").unwrap();
        let given = r8.parse("x1*dx2*dx3*dx4").unwrap();
        assert_eq!(r8.algebra.apply_d(&given).unwrap(), omega);
        let radial = r8.primitive(&omega).unwrap();
        assert_eq!(r8.algebra.apply_d(&radial).unwrap(), omega);
        assert_eq!(radial.len(), 4);
        assert!(matches!(r8.primitive(&given), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn homotopy_formula_on_samples() {
        let r = poly_de_rham(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..=4 {
            for _ in 0..8 {
                let w = r.random_form(&mut rng, k, 3, 3);
                // drop constant 0-forms, where dH + Hd is zero
                let w = Element::from_terms(
                    r.signature(),
                    w.terms().iter().filter(|(m, _)| !m.is_one()).cloned(),
                );
                let dh = r.algebra.apply_d(&r.radial_homotopy(&w)).unwrap();
                let hd = r.radial_homotopy(&r.algebra.apply_d(&w).unwrap());
                assert_eq!(&dh + &hd, w, "k={k}");
            }
        }
    }

    #[test]
    fn flat_forms_on_r8() {
        let s4 = s4_model().algebra;
        let r8 = poly_de_rham(8).unwrap();
        let single = r8.parse("dx1*dx2*dx3*dx4").unwrap();
        let zero = Element::zero(r8.signature());
        assert!(flat_form_check(&s4, &r8, vec![("g4", single), ("g7", zero.clone())]).is_ok());

        let double = r8.parse("dx1*dx2*dx3*dx4 + dx5*dx6*dx7*dx8").unwrap();
        let seven = r8.parse("2*x1*dx2*dx3*dx4*dx5*dx6*dx7*dx8").unwrap();
        assert!(flat_form_check(&s4, &r8, vec![("g4", double.clone()), ("g7", seven)]).is_ok());

        let r = flat_form_check(&s4, &r8, vec![("g4", double.clone()), ("g7", zero)]).unwrap_err();
        assert_eq!(r.witness.unwrap(), -&(&double * &double));
    }

    #[test]
    fn fiber_sequence() {
        let r8 = poly_de_rham(8).unwrap();
        let r = forms_fiber_check(&r8, 50, 3);
        assert!(r.passed(), "{:?}", r.notes);
    }

    #[test]
    fn json_assignment() {
        let r8 = poly_de_rham(8).unwrap();
        let v = serde_json::json!({"g4": "dx1*dx2*dx3*dx4", "g7": "0"});
        let images = assignment_from_json(&r8, &v).unwrap();
        assert_eq!(images.len(), 2);
        assert!(assignment_from_json(&r8, &serde_json::json!(["g4"])).is_err());
        assert!(assignment_from_json(&r8, &serde_json::json!({"g4": 3})).is_err());
    }
}

