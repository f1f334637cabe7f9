//! Verification reports: a verdict, an optional residual, pinned scalars that
//! regression runs compare bit-exactly, and non-pinned statistics.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graded::Element;

pub const REPORT_SCHEMA: &str = "fda-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Capped,
}

impl Verdict {
    /// Pass < Capped < Fail.
    fn severity(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Capped => 1,
            Verdict::Fail => 2,
        }
    }

    pub fn worst(self, other: Verdict) -> Verdict {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Stats {
    pub term_counts: BTreeMap<String, usize>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub task: String,
    pub verdict: Verdict,
    /// What the witness is attached to (a generator, an index pair, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Element>,
    pub scalars: BTreeMap<String, Value>,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(task: impl Into<String>, verdict: Verdict) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            task: task.into(),
            verdict,
            witness_label: None,
            witness: None,
            scalars: BTreeMap::new(),
            stats: Stats::default(),
            notes: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn pass(task: impl Into<String>) -> Self {
        Self::new(task, Verdict::Pass)
    }

    /// A failure carrying its nonzero residual.
    pub fn fail(task: impl Into<String>, label: impl Into<String>, residual: Element) -> Self {
        debug_assert!(!residual.is_zero(), "failure without residual");
        let mut r = Self::new(task, Verdict::Fail);
        r.witness_label = Some(label.into());
        r.stats
            .term_counts
            .insert("residual".to_string(), residual.len());
        r.witness = Some(residual);
        r
    }

    pub fn fail_with_note(task: impl Into<String>, note: impl Into<String>) -> Self {
        Self::new(task, Verdict::Fail).with_note(note)
    }

    pub fn capped(task: impl Into<String>, note: impl Into<String>) -> Self {
        Self::new(task, Verdict::Capped).with_note(note)
    }

    /// Pass iff `residual` is zero.
    pub fn from_residual(task: impl Into<String>, label: impl Into<String>, residual: Element) -> Self {
        if residual.is_zero() {
            Self::pass(task)
        } else {
            Self::fail(task, label, residual)
        }
    }

    /// Combine sub-checks; the verdict is the worst child verdict.
    pub fn all(task: impl Into<String>, children: Vec<Report>) -> Self {
        let verdict = children
            .iter()
            .fold(Verdict::Pass, |v, c| v.worst(c.verdict));
        let mut r = Self::new(task, verdict);
        r.children = children;
        r
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_scalar(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.scalars.insert(key.into(), value.into());
        self
    }

    pub fn with_count(mut self, key: impl Into<String>, n: usize) -> Self {
        self.stats.term_counts.insert(key.into(), n);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_child(mut self, child: Report) -> Self {
        self.verdict = self.verdict.worst(child.verdict);
        self.children.push(child);
        self
    }

    pub fn timed_since(mut self, start: Instant) -> Self {
        self.stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        self
    }

    /// All pinned scalars of this report and its children, keyed by
    /// `task/key` paths. Timing and term statistics are not included.
    pub fn pinned_scalars(&self) -> BTreeMap<String, Value> {
        let mut out = BTreeMap::new();
        self.collect_pinned(&mut out);
        out
    }

    fn collect_pinned(&self, out: &mut BTreeMap<String, Value>) {
        out.insert(
            format!("{}/verdict", self.task),
            serde_json::to_value(self.verdict).expect("verdict"),
        );
        for (k, v) in &self.scalars {
            out.insert(format!("{}/{}", self.task, k), v.clone());
        }
        for c in &self.children {
            c.collect_pinned(out);
        }
    }

    /// First failing report in depth-first order.
    pub fn first_failure(&self) -> Option<&Report> {
        if self.verdict != Verdict::Fail {
            return None;
        }
        self.children
            .iter()
            .find_map(|c| c.first_failure())
            .or(Some(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_verdict_wins() {
        let r = Report::all(
            "x",
            vec![Report::pass("a"), Report::capped("b", "too big"), Report::pass("c")],
        );
        assert_eq!(r.verdict, Verdict::Capped);
        let r = r.with_child(Report::fail_with_note("d", "bad"));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.first_failure().unwrap().task, "d");
    }

    #[test]
    fn pinned_excludes_timing() {
        let r = Report::pass("t").with_scalar("c", "15/1").with_count("terms", 7);
        let p = r.pinned_scalars();
        assert_eq!(p.len(), 2);
        assert_eq!(p["t/c"], Value::from("15/1"));
    }
}
