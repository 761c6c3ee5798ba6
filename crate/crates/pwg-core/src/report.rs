//! Structured pass/fail reports with witnesses for failed identities.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Extra data for the reader: ranks, dimensions, skip reasons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// For failed identities: where the two sides first differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> VerificationReport {
        VerificationReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Pass, detail: None, witness: None });
    }

    pub fn pass_detail(&mut self, name: &str, detail: String) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Pass, detail: Some(detail), witness: None });
    }

    pub fn fail(&mut self, name: &str, witness: String) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Fail, detail: None, witness: Some(witness) });
    }

    pub fn skip(&mut self, name: &str, reason: String) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Skip, detail: Some(reason), witness: None });
    }

    pub fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    /// True when no check failed (skips do not count as failures).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{}.{}", other.subject, c.name);
            self.checks.push(c);
        }
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}:", self.subject)?;
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skip => "skip",
            };
            write!(f, "  [{tag}] {}", c.name)?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
