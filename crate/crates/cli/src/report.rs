use crate::config::{Command, RunConfig};
use serde::Serialize;
use std::path::PathBuf;

/// How a residual is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

impl Relation {
    fn holds(self, value: f64, tolerance: f64) -> bool {
        match self {
            Relation::AtMost => value <= tolerance,
            Relation::AtLeast => value >= tolerance,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

/// One numeric check. `passed` is derived from the other fields, so the two
/// can never disagree; NaN never passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, tolerance: f64, relation: Relation) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            relation,
            passed: relation.holds(value, tolerance),
            detail: None,
        }
    }

    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value, tolerance, Relation::AtMost)
    }

    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value, tolerance, Relation::AtLeast)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {:.3e} {} {:.3e}{}",
            self.name,
            self.value,
            self.relation.symbol(),
            self.tolerance,
            self.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
        )
    }
}

/// A numbered acceptance criterion made of one or more checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// `[PASS] 3 title: check, check, ...`
    pub fn line(&self) -> String {
        let parts: Vec<String> = self.checks.iter().map(Check::summary).collect();
        format!(
            "[{}] {:>2} {}: {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            parts.join("; ")
        )
    }
}

/// What a run did and whether it passed. Unlike the data file this carries
/// the wall time, so it is not byte-reproducible.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Command,
    pub config: RunConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<Criterion>,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_follows_relation() {
        assert!(Check::at_most("a", 1e-7, 1e-6).passed);
        assert!(!Check::at_most("a", 2e-6, 1e-6).passed);
        assert!(Check::at_least("b", 0.2, 0.1).passed);
        assert!(!Check::at_least("b", 0.05, 0.1).passed);
        assert!(!Check::at_most("nan", f64::NAN, 1.0).passed);
        assert!(!Check::at_least("nan", f64::NAN, 1.0).passed);
    }

    #[test]
    fn criterion_needs_every_check() {
        let mut c = Criterion {
            id: 1,
            title: "t",
            checks: vec![Check::at_most("a", 0.0, 1.0)],
        };
        assert!(c.passed());
        assert!(c.line().starts_with("[PASS]  1 t: a"));
        c.checks.push(Check::at_most("b", 2.0, 1.0));
        assert!(!c.passed());
        assert!(c.line().starts_with("[FAIL]"));
        c.checks.clear();
        assert!(!c.passed());
    }
}
