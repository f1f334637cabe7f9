use std::collections::BTreeMap;

use fda_core::graded::parse_q;
use fda_core::linalg::DEFAULT_CAP;
use fda_core::Q;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use crate::tasks::TASKS;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every convention a pinned scalar depends on. Reports computed under a
/// different text are not comparable.
pub const CONVENTION_LEDGER: &str = "\
metric: diag(-1,+1,...,+1)
gammas: lexicographic DFS over 5-fold tensor words in {1, s1, s3, eps}; eps-odd word is Gamma^0
charge conjugation: C = Gamma^0
spinor index order: psi[1..N] follow the rows of the gamma matrices
cocycles: mu_{p+2} = sum over ordered tuples of (C Gamma^{a1..ap})_{ab} psi^a psi^b e_{a1}..e_{ap}, e_a = eta_aa e^a
m2brane: d h3 = -mu4
resolution: d g4 = 0, d h3 = g4 - mu4
m5 cocycle: h3 mu4 + (1/c) mu7, c measured
measured: c = 15 in this gamma basis, equal to the published value 15
lorentz: omega[a,b] (a<b) = omega_ab, omega^a_b = eta^aa omega_ab, d psi = 1/4 omega_ab Gamma^ab psi
canonical order: family, then indices, then name
coefficients: exact rationals, printed p/q
";

pub fn ledger_hash() -> String {
    hex::encode(Sha256::digest(CONVENTION_LEDGER.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskConfig {
    pub task: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
    pub ledger_hash: String,
}

impl TaskConfig {
    pub fn new(task: impl Into<String>) -> Self {
        TaskConfig {
            task: task.into(),
            parameters: BTreeMap::new(),
            ledger_hash: ledger_hash(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !TASKS.iter().any(|t| t.id == self.task) {
            return Err(CliError::UnknownTask(self.task.clone()));
        }
        let expected = ledger_hash();
        if self.ledger_hash != expected {
            return Err(CliError::LedgerMismatch {
                expected,
                found: self.ledger_hash.clone(),
            });
        }
        Ok(())
    }

    pub fn long(&self) -> bool {
        self.parameters.get("long").is_some_and(|v| v == "true")
    }

    pub fn cap(&self) -> Result<usize> {
        self.parsed("cap", DEFAULT_CAP)
    }

    pub fn rational(&self, name: &str) -> Result<Q> {
        match self.parameters.get(name) {
            None => Ok(Q::from_integer(0.into())),
            Some(v) => parse_q(v).map_err(|e| CliError::BadParameter {
                name: name.to_string(),
                reason: e.to_string(),
            }),
        }
    }

    pub fn parsed<T: std::str::FromStr>(&self, name: &str, default: T) -> Result<T> {
        match self.parameters.get(name) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::BadParameter {
                name: name.to_string(),
                reason: format!("cannot parse {v:?}"),
            }),
        }
    }
}
