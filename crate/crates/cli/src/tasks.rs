//! The named verifications. Each task builds what it needs, runs the checks
//! and returns one report; expensive d=11 constructions are shared within a
//! process.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use fda_core::catalog::{
    equivariant_lift, family_seven_cocycle, lorentz_trace, m2brane, m5_cocycle, resolved_minkowski,
    resolved_poincare, s4_model, super_poincare, verify_brane_scan_entry, verify_m5_relation, BraneScanEntry,
    CatalogAlgebra, M5Relation, Nontrivial, SuperMinkowski, SuperPoincare,
};
use fda_core::clifford::{check_clifford, expected_symmetry, CliffordRep};
use fda_core::fierz::{closure_check, quartic_fierz_check, FierzFamily};
use fda_core::graded::format_q;
use fda_core::linalg::cohomology_dims;
use fda_core::rathtpy::{flat_form_check, forms_fiber_check, hopf_sequence_check, poly_de_rham, sphere_model};
use fda_core::{Element, Report, SemifreeDgca, Verdict, Q};

use crate::config::TaskConfig;
use crate::error::{CliError, Result};

pub struct TaskInfo {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&TaskConfig) -> Result<Report>,
}

pub const TASKS: &[TaskInfo] = &[
    TaskInfo { id: "d2.catalog", summary: "d^2 = 0 on every catalog algebra", run: d2_catalog },
    TaskInfo { id: "clifford.d3", summary: "Clifford relations and pairing symmetries, d=3", run: clifford_d3 },
    TaskInfo { id: "clifford.d11", summary: "Clifford relations and pairing symmetries, d=11", run: clifford_d11 },
    TaskInfo { id: "fierz.fast", summary: "tensor-contraction checks of mu4 closure and the mu7 relation", run: fierz_fast },
    TaskInfo { id: "mu.closure", summary: "d mu4 = 0 (d=11), d mu3 = 0 (d=3), control (d=3, p=2)", run: mu_closure },
    TaskInfo { id: "m5.relation", summary: "d mu7 = c mu4^2, symbolic and tensor routes", run: m5_relation },
    TaskInfo { id: "m5.cocycle", summary: "h3 mu4 + (1/c) mu7 is closed in the m2brane algebra", run: m5_cocycle_task },
    TaskInfo { id: "resolution.homotopy", summary: "p i = id and id - i p = ds + sd", run: resolution },
    TaskInfo { id: "lift.equivariant", summary: "the s4-valued lift of mu4 and its composites", run: lift },
    TaskInfo { id: "hopf.pushout", summary: "killing g4 in s4 leaves R[g7]", run: hopf },
    TaskInfo { id: "s4.cohomology", summary: "cohomology of the s4 model (--max-degree)", run: s4_cohomology },
    TaskInfo { id: "sphere.cohomology", summary: "cohomology of the S^n model (--n)", run: sphere_cohomology },
    TaskInfo { id: "brane.scan", summary: "closure and nontriviality for (3,2,1), (11,32,2), (3,2,2)", run: brane_scan },
    TaskInfo { id: "poincare.d2", summary: "d^2 on super-Poincare and mu4 closure there", run: poincare_d2 },
    TaskInfo { id: "poincare.traces", summary: "tr(omega^k) closure and vanishing of even traces (--long: k=7)", run: poincare_traces },
    TaskInfo { id: "family", summary: "the (alpha, beta) family of 7-cocycles (--alpha, --beta)", run: family },
    TaskInfo { id: "family.alpha1", summary: "the family at (alpha, beta) = (1, 0)", run: family_alpha1 },
    TaskInfo { id: "family.suite", summary: "family at (0,0), (1,0), (-3/7,0); --long adds (0,1), (1,1)", run: family_suite },
    TaskInfo { id: "flat.forms", summary: "flat s4-valued forms on R^8 and the fiber sequence", run: flat_forms },
];

pub fn task_info(id: &str) -> Option<&'static TaskInfo> {
    TASKS.iter().find(|t| t.id == id)
}

pub fn run_task(config: &TaskConfig) -> Result<Report> {
    config.validate()?;
    let info = task_info(&config.task).ok_or_else(|| CliError::UnknownTask(config.task.clone()))?;
    let start = Instant::now();
    let report = match (info.run)(config) {
        Ok(r) => r,
        Err(CliError::Core(fda_core::Error::Capped { degree, estimate, cap })) => Report::capped(
            config.task.clone(),
            format!("degree {degree} basis has {estimate} monomials, above the cap {cap}; raise --cap"),
        ),
        Err(e) => return Err(e),
    };
    let mut report = report.timed_since(start);
    report.task = config.task.clone();
    Ok(report)
}

fn rep11() -> &'static CliffordRep {
    static REP: OnceLock<CliffordRep> = OnceLock::new();
    REP.get_or_init(|| CliffordRep::build(11, (1, 10)).expect("d=11 is supported"))
}

fn rep3() -> &'static CliffordRep {
    static REP: OnceLock<CliffordRep> = OnceLock::new();
    REP.get_or_init(|| CliffordRep::build(3, (1, 2)).expect("d=3 is supported"))
}

fn mink11() -> &'static SuperMinkowski {
    static M: OnceLock<SuperMinkowski> = OnceLock::new();
    M.get_or_init(|| SuperMinkowski::new(11, rep11()).expect("d=11 super-Minkowski"))
}

fn mink3() -> &'static SuperMinkowski {
    static M: OnceLock<SuperMinkowski> = OnceLock::new();
    M.get_or_init(|| SuperMinkowski::new(3, rep3()).expect("d=3 super-Minkowski"))
}

fn relation() -> Result<&'static M5Relation> {
    static R: OnceLock<M5Relation> = OnceLock::new();
    if let Some(r) = R.get() {
        return Ok(r);
    }
    let r = verify_m5_relation(mink11())?;
    Ok(R.get_or_init(|| r))
}

fn m2() -> Result<&'static CatalogAlgebra> {
    static A: OnceLock<CatalogAlgebra> = OnceLock::new();
    if let Some(a) = A.get() {
        return Ok(a);
    }
    let a = m2brane(mink11())?;
    Ok(A.get_or_init(|| a))
}

fn poincare() -> Result<&'static SuperPoincare> {
    static P: OnceLock<SuperPoincare> = OnceLock::new();
    if let Some(p) = P.get() {
        return Ok(p);
    }
    let (p, _) = super_poincare(mink11())?;
    Ok(P.get_or_init(|| p))
}

/// A negative control: passes when `inner` fails.
fn expect_failure(task: &str, inner: Report, why: &str) -> Report {
    let verdict = if inner.verdict == Verdict::Fail { Verdict::Pass } else { Verdict::Fail };
    let mut r = Report::new(task, verdict);
    if verdict == Verdict::Fail {
        r = r.with_note(format!("control did not fail: {why}"));
    }
    r.children.push(inner);
    r
}

fn d2_of(name: &str, a: &SemifreeDgca) -> Report {
    let mut r = a.check_d_squared();
    r.task = format!("d2.{name}");
    r.with_scalar("generators", a.signature().len())
}

fn d2_catalog(_: &TaskConfig) -> Result<Report> {
    let mut children = vec![d2_of("mink3", &mink3().algebra), d2_of("mink11", &mink11().algebra)];
    children.push(d2_of("m2brane", &m2()?.algebra));
    let res = resolved_minkowski(mink11())?;
    children.push(d2_of("resolved", &res.algebra.algebra));
    let sp = poincare()?;
    children.push(d2_of("poincare", &sp.algebra));
    children.push(d2_of("resolved_poincare", &resolved_poincare(sp, mink11())?.algebra));
    children.push(d2_of("s4", &s4_model().algebra));
    for n in 1..=8 {
        children.push(d2_of(&format!("derham{n}"), &poly_de_rham(n)?.algebra));
    }
    Ok(Report::all("d2.catalog", children))
}

fn clifford_report(rep: &CliffordRep) -> Report {
    check_clifford(rep)
        .with_scalar("d", rep.d())
        .with_scalar("spinor_dim", rep.spinor_dim())
}

fn clifford_d3(_: &TaskConfig) -> Result<Report> {
    Ok(clifford_report(rep3()))
}

fn clifford_d11(_: &TaskConfig) -> Result<Report> {
    Ok(clifford_report(rep11()))
}

fn fierz_fast(_: &TaskConfig) -> Result<Report> {
    let rep = rep11();
    let c = rep.charge_conjugation().clone();
    let rank3 = move |idx: &[usize]| c.mul(&rep.gamma_product(idx));
    let control = closure_check(rep, 3, &rank3, expected_symmetry(3));
    Ok(Report::all(
        "fierz.fast",
        vec![
            quartic_fierz_check(rep, FierzFamily::MU4_CLOSURE),
            quartic_fierz_check(rep, FierzFamily::Mu7Relation),
            quartic_fierz_check(rep3(), FierzFamily::Closure { p: 1 }),
            expect_failure("fierz.p3_substituted", control, "rank-3 pairing accepted"),
        ],
    ))
}

fn closure_of(task: &str, mink: &SuperMinkowski, p: usize) -> Result<Report> {
    let mu = mink.brane_cocycle(p)?;
    let d = mink.algebra.apply_d(&mu)?;
    Ok(Report::from_residual(task, format!("mu{}", p + 2), d).with_scalar("terms", mu.len()))
}

fn mu_closure(_: &TaskConfig) -> Result<Report> {
    let control = closure_of("mu.closure.3.2.inner", mink3(), 2)?;
    Ok(Report::all(
        "mu.closure",
        vec![
            closure_of("mu.closure.11.2", mink11(), 2)?,
            closure_of("mu.closure.3.1", mink3(), 1)?,
            expect_failure("mu.control.3.2", control, "d mu4 vanishes in d=3"),
        ],
    ))
}

fn m5_relation(_: &TaskConfig) -> Result<Report> {
    let rel = relation()?;
    let fifteen = Q::from_integer(15.into());
    Ok(rel.report.clone().with_scalar("c_is_15", rel.c == fifteen))
}

fn m5_cocycle_task(_: &TaskConfig) -> Result<Report> {
    let c = relation()?.c.clone();
    let (_, report) = m5_cocycle(mink11(), m2()?, &c)?;
    Ok(report)
}

fn resolution(_: &TaskConfig) -> Result<Report> {
    Ok(resolved_minkowski(mink11())?.report)
}

type LiftParts = (fda_core::catalog::Resolution, fda_core::DgcaMorphism, Report);

fn lift_parts() -> Result<&'static LiftParts> {
    static L: OnceLock<LiftParts> = OnceLock::new();
    if let Some(l) = L.get() {
        return Ok(l);
    }
    let c = relation()?.c.clone();
    let res = resolved_minkowski(mink11())?;
    let (m5, _) = m5_cocycle(mink11(), m2()?, &c)?;
    let (lift, report) = equivariant_lift(mink11(), &res, m2()?, &m5, &c)?;
    Ok(L.get_or_init(|| (res, lift, report)))
}

fn lift(_: &TaskConfig) -> Result<Report> {
    Ok(lift_parts()?.2.clone())
}

fn hopf(_: &TaskConfig) -> Result<Report> {
    Ok(hopf_sequence_check())
}

fn cohomology_report(task: &str, algebra: &Arc<SemifreeDgca>, n: u32, max_degree: u32, cap: usize) -> Result<Report> {
    let dims = cohomology_dims(algebra, max_degree, cap)?;
    let expected: Vec<usize> = (0..=max_degree).map(|k| usize::from(k == 0 || k == n)).collect();
    let r = if dims == expected {
        Report::pass(task)
    } else {
        Report::fail_with_note(task, format!("expected {expected:?}"))
    };
    Ok(r.with_scalar("dims", dims).with_scalar("max_degree", max_degree))
}

fn s4_cohomology(config: &TaskConfig) -> Result<Report> {
    let max = config.parsed("max_degree", 12u32)?;
    cohomology_report("s4.cohomology", &s4_model().algebra, 4, max, config.cap()?)
}

fn sphere_cohomology(config: &TaskConfig) -> Result<Report> {
    let n = config.parsed("n", 4u32)?;
    if n == 0 {
        return Err(CliError::BadParameter { name: "n".into(), reason: "must be positive".into() });
    }
    let max = config.parsed("max_degree", 3 * n)?;
    let model = sphere_model(n)?;
    cohomology_report("sphere.cohomology", &model.algebra, n, max, config.cap()?).map(|r| r.with_scalar("n", n))
}

fn scan_row(entry: BraneScanEntry, closed: bool, nontrivial: Nontrivial) -> Report {
    let task = format!("scan.{}.{}.{}", entry.d, entry.n, entry.p);
    let found = serde_json::to_value(&entry.nontrivial).expect("enum");
    let mut r = if entry.closed == closed && entry.nontrivial == nontrivial {
        Report::new(task, Verdict::Pass)
    } else if entry.nontrivial == Nontrivial::Capped {
        Report::capped(task, "coboundary solve capped")
    } else {
        Report::fail_with_note(
            task,
            format!(
                "expected closed={closed}, nontrivial={:?}; found closed={}, nontrivial={found}",
                nontrivial, entry.closed
            ),
        )
    };
    r = r.with_scalar("closed", entry.closed).with_scalar("nontrivial", found);
    r.children.push(entry.report);
    r
}

fn brane_scan(config: &TaskConfig) -> Result<Report> {
    let cap = config.cap()?;
    Ok(Report::all(
        "brane.scan",
        vec![
            scan_row(verify_brane_scan_entry(3, 2, 1, cap)?, true, Nontrivial::Yes),
            scan_row(verify_brane_scan_entry(11, 32, 2, cap)?, true, Nontrivial::Yes),
            scan_row(verify_brane_scan_entry(3, 2, 2, cap)?, false, Nontrivial::NotApplicable),
        ],
    ))
}

fn poincare_d2(_: &TaskConfig) -> Result<Report> {
    let sp = poincare()?;
    let d2 = d2_of("poincare", &sp.algebra);
    let mu4 = mink11().brane_cocycle_in(sp.signature(), 2)?;
    let closed = Report::from_residual("poincare.mu4_closed", "mu4", sp.algebra.apply_d(&mu4)?);
    Ok(Report::all("poincare.d2", vec![d2, closed]).with_scalar("lorentz_generators", sp.omega_ids().len()))
}

fn trace3() -> Result<&'static (Element, Report)> {
    static T: OnceLock<(Element, Report)> = OnceLock::new();
    if let Some(t) = T.get() {
        return Ok(t);
    }
    let t = lorentz_trace(poincare()?, 3)?;
    Ok(T.get_or_init(|| t))
}

fn trace7() -> Result<&'static (Element, Report)> {
    static T: OnceLock<(Element, Report)> = OnceLock::new();
    if let Some(t) = T.get() {
        return Ok(t);
    }
    let t = lorentz_trace(poincare()?, 7)?;
    Ok(T.get_or_init(|| t))
}

fn poincare_traces(config: &TaskConfig) -> Result<Report> {
    let (_, r3) = trace3()?;
    let mut children = vec![r3.clone()];
    if config.long() {
        children.push(trace7()?.1.clone());
    }
    Ok(Report::all("poincare.traces", children))
}

fn family_at(alpha: &Q, beta: &Q, long: bool) -> Result<Report> {
    let task = format!("family.{}.{}", format_q(alpha), format_q(beta));
    if !num_zero(beta) && !long {
        return Ok(Report::capped(task, "beta != 0 needs tr(omega^7); rerun with --long"));
    }
    let sp = poincare()?;
    let c = relation()?.c.clone();
    let resolved = resolved_poincare(sp, mink11())?;
    let (_, lift, _) = lift_parts()?;
    let tr7 = if num_zero(beta) { None } else { Some(&trace7()?.0) };
    let (tr3, _) = trace3()?;
    match family_seven_cocycle(sp, mink11(), &resolved, lift, tr3, tr7, alpha, beta, &c) {
        Ok((_, report)) => Ok(report),
        Err(fda_core::Error::ChainMapViolation { generator, residual }) => Ok(Report::fail(task, generator, *residual)),
        Err(e) => Err(e.into()),
    }
}

fn num_zero(q: &Q) -> bool {
    q == &Q::from_integer(0.into())
}

fn family(config: &TaskConfig) -> Result<Report> {
    family_at(&config.rational("alpha")?, &config.rational("beta")?, config.long())
}

fn family_alpha1(config: &TaskConfig) -> Result<Report> {
    family_at(&Q::from_integer(1.into()), &Q::from_integer(0.into()), config.long())
}

fn family_suite(config: &TaskConfig) -> Result<Report> {
    let q = |n: i64, d: i64| Q::new(n.into(), d.into());
    let mut points = vec![(q(0, 1), q(0, 1)), (q(1, 1), q(0, 1)), (q(-3, 7), q(0, 1))];
    if config.long() {
        points.extend([(q(0, 1), q(1, 1)), (q(1, 1), q(1, 1))]);
    }
    let children = points
        .iter()
        .map(|(a, b)| family_at(a, b, config.long()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::all("family.suite", children).with_scalar("points", points.len()))
}

fn flat_forms(_: &TaskConfig) -> Result<Report> {
    let s4 = s4_model().algebra;
    let r8 = poly_de_rham(8)?;
    let zero = Element::zero(r8.signature());
    let single = r8.parse("dx1*dx2*dx3*dx4")?;
    let double = r8.parse("dx1*dx2*dx3*dx4 + dx5*dx6*dx7*dx8")?;
    let seven = r8.parse("2*x1*dx2*dx3*dx4*dx5*dx6*dx7*dx8")?;
    let verdict = |task: &str, r: std::result::Result<fda_core::rathtpy::FlatGForm, Report>| match r {
        Ok(_) => Report::pass(task),
        Err(mut rep) => {
            rep.task = task.to_string();
            rep
        }
    };
    let a = verdict("flat.single", flat_form_check(&s4, &r8, vec![("g4", single), ("g7", zero.clone())]));
    let b = verdict("flat.double", flat_form_check(&s4, &r8, vec![("g4", double.clone()), ("g7", seven)]));
    let c = verdict("flat.double_without_g7.inner", flat_form_check(&s4, &r8, vec![("g4", double), ("g7", zero)]));
    let c = expect_failure("flat.double_without_g7", c, "omega4^2 != 0 but omega7 = 0 accepted");
    let fiber = forms_fiber_check(&r8, 50, 0x5eed);
    Ok(Report::all("flat.forms", vec![a, b, c, fiber]))
}
