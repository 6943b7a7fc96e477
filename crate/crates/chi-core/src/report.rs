//! Plain result types returned by the verification routines. The CLI crate
//! turns these into JSON; nothing here does IO or timing.

use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of one machine-checked identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Stable statement identifier, e.g. `shuffle-relation`.
    pub statement: &'static str,
    /// Instance parameters in a fixed order.
    pub params: Vec<(&'static str, i64)>,
    pub pass: bool,
    /// Term count of the left-hand side after normalization.
    pub lhs_terms: usize,
    /// Term count of the right-hand side after normalization.
    pub rhs_terms: usize,
    /// Free-form key/value details (rendered values, counterexamples).
    pub details: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn new(statement: &'static str, params: Vec<(&'static str, i64)>) -> Self {
        VerificationReport {
            statement,
            params,
            pass: false,
            lhs_terms: 0,
            rhs_terms: 0,
            details: Vec::new(),
        }
    }

    pub fn with_result(mut self, pass: bool, lhs_terms: usize, rhs_terms: usize) -> Self {
        self.pass = pass;
        self.lhs_terms = lhs_terms;
        self.rhs_terms = rhs_terms;
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<String>) -> Self {
        self.details.push((String::from(key), value.into()));
        self
    }
}
