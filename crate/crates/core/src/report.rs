//! Serializable pass/fail reports produced by the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One named check with an optional failure witness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// Human-readable witness or detail; empty on success unless the check
    /// has something worth reporting.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            passed: true,
            detail: String::new(),
        }
    }

    pub fn pass_with(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    pub fn from_result(name: impl Into<String>, result: Result<(), String>) -> Self {
        match result {
            Ok(()) => Self::pass(name),
            Err(witness) => Self::fail(name, witness),
        }
    }
}

/// A named group of checks.  Passes iff every item passes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn items(&self) -> &[CheckItem] {
        &self.items
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    /// The first failing item, if any.
    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for item in &self.items {
            write!(
                f,
                "  [{}] {}",
                if item.passed { "ok" } else { "FAIL" },
                item.name
            )?;
            if !item.detail.is_empty() {
                write!(f, ": {}", item.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = CheckReport::new("demo");
        r.push(CheckItem::pass("a"));
        r.push(CheckItem::fail("b", "witness here"));
        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "b");
    }
}
