//! Timestamped JSON reports on disk.

use std::fs;
use std::path::{Path, PathBuf};

use chrono::Utc;
use fda_core::Report;

use crate::config::{ledger_hash, ENGINE_VERSION};
use crate::error::Result;

pub fn report_json(report: &Report) -> serde_json::Value {
    serde_json::json!({
        "engine_version": ENGINE_VERSION,
        "ledger_hash": ledger_hash(),
        "report": report,
    })
}

/// Write `report` under `dir` as `<task>-<UTC timestamp>.json`.
pub fn write_report(dir: &Path, report: &Report) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let stamp = Utc::now().format("%Y%m%dT%H%M%S%.3fZ");
    let path = dir.join(format!("{}-{stamp}.json", report.task));
    let mut json = report_json(report);
    json["written_at"] = Utc::now().to_rfc3339().into();
    fs::write(&path, serde_json::to_string_pretty(&json)?)?;
    Ok(path)
}
