//! Golden reports: the pinned scalars of a run, compared bit-exactly later.

use std::collections::BTreeMap;

use fda_core::{Report, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{ledger_hash, ENGINE_VERSION};
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenReport {
    pub task: String,
    pub verdict: Verdict,
    pub pinned: BTreeMap<String, Value>,
    pub engine_version: String,
    pub ledger_hash: String,
}

impl GoldenReport {
    pub fn from_report(report: &Report) -> Self {
        GoldenReport {
            task: report.task.clone(),
            verdict: report.verdict,
            pinned: report.pinned_scalars(),
            engine_version: ENGINE_VERSION.to_string(),
            ledger_hash: ledger_hash(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarDiff {
    pub key: String,
    pub golden: Option<Value>,
    pub found: Option<Value>,
}

/// Compare a fresh report against a golden one. Any difference in a pinned
/// scalar, present or missing on either side, is reported.
pub fn compare_golden(report: &Report, golden: &GoldenReport) -> Result<Vec<ScalarDiff>> {
    let current = ledger_hash();
    if golden.ledger_hash != current {
        return Err(CliError::LedgerMismatch {
            expected: current,
            found: golden.ledger_hash.clone(),
        });
    }
    if golden.task != report.task {
        return Err(CliError::TaskMismatch {
            report: report.task.clone(),
            golden: golden.task.clone(),
        });
    }
    let found = report.pinned_scalars();
    let mut keys: Vec<&String> = found.keys().chain(golden.pinned.keys()).collect();
    keys.sort();
    keys.dedup();
    Ok(keys
        .into_iter()
        .filter(|k| found.get(*k) != golden.pinned.get(*k))
        .map(|k| ScalarDiff {
            key: k.clone(),
            golden: golden.pinned.get(k).cloned(),
            found: found.get(k).cloned(),
        })
        .collect())
}
