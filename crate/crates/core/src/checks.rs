use serde::Serialize;

use crate::error::Result;

/// One named pass/fail entry of a report; failures carry a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, witness())
        }
    }

    pub fn from_result<T>(name: impl Into<String>, r: &Result<T>) -> Self {
        match r {
            Ok(_) => Self::pass(name),
            Err(e) => Self::fail(name, e.to_string()),
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Sorted copy, for multiset comparisons.
pub(crate) fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.sort();
    out
}
