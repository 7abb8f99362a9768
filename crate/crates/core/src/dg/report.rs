//! Check reports: deterministic per-generator residual listings.

use crate::dg::element::{Element, GenId};

/// Outcome of one verification check. A check that could not run because an
/// earlier construction failed is `Skipped`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// One failing generator with its nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub generator: GenId,
    pub residual: Element,
    pub note: Option<String>,
}

/// Aggregate result of a generator-wise check. `failures` is sorted by
/// generator id so reports are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, checked: usize, mut failures: Vec<Failure>) -> Self {
        failures.sort_by(|a, b| a.generator.cmp(&b.generator));
        CheckReport { name: name.into(), checked, failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> CheckStatus {
        if self.passed() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}
