use std::fmt;

use serde::Serialize;

/// Outcome of one exhaustive check.
///
/// A failing report always carries a witness: the element indices of the
/// first violation in row-major scan order. Re-evaluating the checked law at
/// the witness reproduces the violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            witness: None,
            detail: detail.into(),
        }
    }

    pub fn fail(check: impl Into<String>, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: false,
            witness: Some(witness),
            detail: detail.into(),
        }
    }

    /// Folds several leg reports into one: the first failing leg wins, and
    /// its check name is kept in the detail so the leg stays identifiable.
    pub fn combine(check: impl Into<String>, legs: &[CheckReport], pass_detail: impl Into<String>) -> Self {
        let check = check.into();
        match legs.iter().find(|r| !r.passed) {
            Some(bad) => CheckReport {
                check,
                passed: false,
                witness: bad.witness.clone(),
                detail: format!("{}: {}", bad.check, bad.detail),
            },
            None => CheckReport::pass(check, pass_detail),
        }
    }

    pub fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.check, self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, " [witness:")?;
            for x in w {
                write!(f, " {x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
