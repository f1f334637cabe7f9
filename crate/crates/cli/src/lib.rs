//! Named verification tasks over `fda-core`, golden-report comparison and a
//! report store.

pub mod config;
pub mod error;
pub mod golden;
pub mod store;
pub mod tasks;

pub use config::{ledger_hash, TaskConfig, CONVENTION_LEDGER, ENGINE_VERSION};
pub use error::{CliError, Result};
pub use golden::{compare_golden, GoldenReport, ScalarDiff};
pub use tasks::{run_task, task_info, TASKS};
