//! Report types shared by the check suites.

use serde::Serialize;

/// Rank data of a bounded-degree span check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub degree: u32,
    pub rank: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Outcome of checking many identities; failures carry a readable witness.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }
}

/// One line of a check report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub degree: u32,
    pub pass: bool,
    pub count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// A suite run: every item with its outcome, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub algebra: String,
    pub degree: u32,
    pub pass: bool,
    pub checks: Vec<CheckItem>,
}

/// Failure witnesses kept per item.
pub const WITNESS_LIMIT: usize = 10;

impl CheckReport {
    pub fn new(suite: &str, algebra: &str, degree: u32) -> Self {
        CheckReport {
            suite: suite.into(),
            algebra: algebra.into(),
            degree,
            pass: true,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, mut item: CheckItem) {
        item.witness.truncate(WITNESS_LIMIT);
        self.pass &= item.pass;
        self.checks.push(item);
    }

    pub fn identity(&mut self, check: &str, degree: u32, r: &IdentityReport) {
        self.push(CheckItem {
            check: check.into(),
            degree,
            pass: r.pass(),
            count: r.checked,
            witness: r.failures.clone(),
            wall_ms: None,
        });
    }

    pub fn flag(&mut self, check: &str, degree: u32, pass: bool, count: usize, witness: Vec<String>) {
        self.push(CheckItem {
            check: check.into(),
            degree,
            pass,
            count,
            witness,
            wall_ms: None,
        });
    }

    /// Appends the items of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut item in other.checks {
            item.check = format!("{prefix}.{}", item.check);
            self.push(item);
        }
    }

    /// Stamps every item added after `from` with `ms`.
    pub fn stamp(&mut self, from: usize, ms: u64) {
        for item in &mut self.checks[from..] {
            item.wall_ms = Some(ms);
        }
    }
}
