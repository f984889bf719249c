//! Named residuals collected by the oracle comparisons.

use std::fmt;

/// One comparison: a residual against a tolerance, with free-form context.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub context: Vec<(String, String)>,
}

impl CheckEntry {
    /// `pass` is `residual <= tolerance`; a NaN residual always fails.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckEntry {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            context: Vec::new(),
        }
    }

    /// Encodes `observed > bound` as `bound / observed <= 1`.
    pub fn lower_bound(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        let residual = if observed > 0.0 {
            bound / observed
        } else {
            f64::INFINITY
        };
        CheckEntry::new(name, residual, 1.0).with("observed", format!("{observed:e}"))
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.context.push((key.into(), value.to_string()));
        self
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} residual={:e} tol={:e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance
        )?;
        for (k, v) in &self.context {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub entries: Vec<CheckEntry>,
}

impl VerifyReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.entries.extend(other.entries);
    }

    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Largest `residual / tolerance` over all entries.
    pub fn worst_ratio(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.residual / e.tolerance)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_fails() {
        assert!(!CheckEntry::new("x", f64::NAN, 1.0).pass);
        assert!(CheckEntry::new("x", 1.0, 1.0).pass);
    }

    #[test]
    fn lower_bound_encoding() {
        assert!(CheckEntry::lower_bound("x", 2.0, 1e-6).pass);
        assert!(!CheckEntry::lower_bound("x", 1e-9, 1e-6).pass);
        assert!(!CheckEntry::lower_bound("x", 0.0, 1e-6).pass);
    }

    #[test]
    fn report_is_conjunction() {
        let mut r = VerifyReport::new();
        r.push(CheckEntry::new("a", 0.0, 1.0));
        assert!(r.pass());
        r.push(CheckEntry::new("b", 2.0, 1.0));
        assert!(!r.pass());
        assert_eq!(r.failures().count(), 1);
    }
}
