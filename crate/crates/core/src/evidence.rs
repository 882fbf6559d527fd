//! Structured pass/fail records produced by the verification routines.
//!
//! Vectors in counterexamples are stored as formatted field elements so that
//! evidence stays independent of the coefficient field.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactlin::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub message: String,
    /// the offending vector, if any, in the basis named by `message`
    pub vector: Vec<String>,
}

impl Counterexample {
    pub fn new(message: impl Into<String>) -> Self {
        Counterexample {
            message: message.into(),
            vector: Vec::new(),
        }
    }

    pub fn with_vector<F: Field>(mut self, f: F, v: &[F::Elem]) -> Self {
        self.vector = v.iter().map(|x| f.format(x)).collect();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, cx: Counterexample) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: cx.message.clone(),
            counterexample: Some(cx),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if ok {
            Check::pass(name, detail)
        } else {
            Check::fail(name, Counterexample::new(detail))
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.detail)
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    pub checks: Vec<Check>,
}

impl Evidence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Evidence) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl From<Check> for Evidence {
    fn from(c: Check) -> Self {
        Evidence { checks: alloc::vec![c] }
    }
}
