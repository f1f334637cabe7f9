use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use super::SuperMinkowski;
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::linalg::{is_coboundary, Coboundary};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Nontrivial {
    Yes,
    No,
    /// Closure failed, so the question does not arise.
    NotApplicable,
    Capped,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraneScanEntry {
    pub d: usize,
    pub n: usize,
    pub p: usize,
    pub closed: bool,
    pub nontrivial: Nontrivial,
    #[serde(skip)]
    pub report: Report,
}

/// Decide closure of μ_{p+2} in CE(ℝ^{d-1,1|N}) and, when closed, whether
/// its class is nonzero by an exact coboundary solve.
pub fn verify_brane_scan_entry(d: usize, n: usize, p: usize, cap: usize) -> Result<BraneScanEntry> {
    let start = Instant::now();
    let rep = CliffordRep::build(d, (1, d - 1))?;
    if rep.spinor_dim() != n {
        return Err(Error::Unsupported(format!(
            "d={d} carries N={}, not N={n}",
            rep.spinor_dim()
        )));
    }
    let mink = SuperMinkowski::new(d, &rep)?;
    let mu = mink.brane_cocycle(p)?;
    let d_mu = mink.algebra.apply_d(&mu)?;
    let task = format!("scan.{d}.{n}.{p}");
    if !d_mu.is_zero() {
        let report = Report::fail(format!("{task}.closed"), format!("mu{}", p + 2), d_mu);
        return Ok(BraneScanEntry {
            d,
            n,
            p,
            closed: false,
            nontrivial: Nontrivial::NotApplicable,
            report: Report::all(task, vec![report]).timed_since(start),
        });
    }
    let algebra = Arc::clone(&mink.algebra);
    let (nontrivial, note) = match is_coboundary(&algebra, &mu, cap)? {
        Coboundary::Exact(w) => (Nontrivial::No, format!("exact, witness with {} terms", w.len())),
        Coboundary::NotExact => (Nontrivial::Yes, "no primitive in the degree below".to_string()),
        Coboundary::Capped {
            degree,
            estimate,
            cap,
        } => (
            Nontrivial::Capped,
            format!("degree {degree} basis has {estimate} monomials, cap {cap}"),
        ),
    };
    let report = Report::pass(format!("{task}.closed"))
        .with_scalar("mu_terms", mu.len())
        .with_note(note);
    let report = Report::all(task, vec![report])
        .with_scalar("closed", true)
        .with_scalar("nontrivial", serde_json::to_value(&nontrivial).expect("enum"))
        .timed_since(start);
    Ok(BraneScanEntry {
        d,
        n,
        p,
        closed: true,
        nontrivial,
        report,
    })
}
