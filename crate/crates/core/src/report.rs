//! Structured verification reports with JSON serialization.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Outcome of a single exact identity check.  `equal` is true iff the two
/// serialized sides agreed exactly (difference identically zero).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub identity: String,
    pub shapes: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub specialization: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    /// Advisory checks (open conjectures) never affect exit status.
    #[serde(default)]
    pub advisory: bool,
}

impl Check {
    pub fn new<L: Display, R: Display>(
        identity: impl Into<String>,
        shapes: impl Into<String>,
        lhs: &L,
        rhs: &R,
        equal: bool,
    ) -> Self {
        Check {
            identity: identity.into(),
            shapes: shapes.into(),
            specialization: BTreeMap::new(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            equal,
            advisory: false,
        }
    }

    pub fn scalar_eq(
        identity: impl Into<String>,
        shapes: impl Into<String>,
        lhs: &Scalar,
        rhs: &Scalar,
    ) -> Self {
        let equal = lhs == rhs;
        Check::new(identity, shapes, lhs, rhs, equal)
    }

    pub fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    pub fn with_specialization(mut self, spec: BTreeMap<String, String>) -> Self {
        self.specialization = spec;
        self
    }
}

/// An ordered collection of checks produced by one verify operation.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub items: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.items.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    /// All non-advisory checks passed.
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|c| c.equal || c.advisory)
    }

    /// All checks passed, advisory ones included.
    pub fn all_pass_strict(&self) -> bool {
        self.items.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.items.iter().filter(|c| !c.equal)
    }
}

pub fn spec_map(entries: &[(&str, &Scalar)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
