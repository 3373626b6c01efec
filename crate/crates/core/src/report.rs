//! Total (non fail-fast) validation reports.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<C> {
    pub condition: C,
    /// Element, object or morphism indices at which the condition fails.
    pub at: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<C> {
    violations: Vec<Violation<C>>,
}

impl<C> Default for ValidationReport<C> {
    fn default() -> Self {
        Self {
            violations: Vec::new(),
        }
    }
}

impl<C: PartialEq> ValidationReport<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, condition: C, at: impl Into<Vec<usize>>, detail: impl Into<String>) {
        self.violations.push(Violation {
            condition,
            at: at.into(),
            detail: detail.into(),
        });
    }

    pub fn check(
        &mut self,
        ok: bool,
        condition: C,
        at: impl Into<Vec<usize>>,
        detail: impl FnOnce() -> String,
    ) {
        if !ok {
            self.push(condition, at, detail());
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation<C>] {
        &self.violations
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// True if some violation is of the given condition.
    pub fn cites(&self, condition: &C) -> bool {
        self.violations.iter().any(|v| &v.condition == condition)
    }

    /// True if some violation of `condition` is located exactly at `at`.
    pub fn cites_at(&self, condition: &C, at: &[usize]) -> bool {
        self.violations
            .iter()
            .any(|v| &v.condition == condition && v.at == at)
    }

    pub fn extend(&mut self, other: ValidationReport<C>) {
        self.violations.extend(other.violations);
    }

    pub fn map<D: PartialEq>(self, f: impl Fn(C) -> D) -> ValidationReport<D> {
        ValidationReport {
            violations: self
                .violations
                .into_iter()
                .map(|v| Violation {
                    condition: f(v.condition),
                    at: v.at,
                    detail: v.detail,
                })
                .collect(),
        }
    }
}

impl<C: fmt::Debug> fmt::Display for ValidationReport<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(8) {
            write!(f, "; {:?} at {:?}: {}", v.condition, v.at, v.detail)?;
        }
        if self.violations.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}
