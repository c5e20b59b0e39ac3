//! Validation reports: named checks with witnesses, dimension tables, notes.

use std::collections::BTreeMap;

use serde::Serialize;

/// One axiom or identity checked over a finite family of basis tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub subject: String,
    pub name: String,
    pub passed: bool,
    /// Number of basis tuples examined.
    pub examined: usize,
    /// First violating tuple with both sides, when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Degree → dimension table for a computed space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub name: String,
    pub dims: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<DimTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Accumulates the outcome of one check while tuples are examined.
#[derive(Debug, Default)]
pub struct Tally {
    examined: usize,
    witness: Option<String>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one tuple; the witness closure runs only for the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.examined += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.record(false, || witness);
    }

    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn push(&mut self, subject: &str, name: &str, tally: Tally) -> bool {
        let passed = tally.witness.is_none();
        self.checks.push(Check {
            subject: subject.to_string(),
            name: name.to_string(),
            passed,
            examined: tally.examined,
            witness: tally.witness,
        });
        passed
    }

    pub fn push_bool(&mut self, subject: &str, name: &str, ok: bool, witness: impl FnOnce() -> String) -> bool {
        let mut t = Tally::new();
        t.record(ok, witness);
        self.push(subject, name, t)
    }

    pub fn table(&mut self, name: impl Into<String>, dims: BTreeMap<i64, usize>) {
        self.tables.push(DimTable { name: name.into(), dims });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn warn(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.warnings.contains(&text) {
            self.warnings.push(text);
        }
    }

    /// Appends everything from `other`, keeping this report's command and seed.
    pub fn absorb(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.tables.extend(other.tables);
        self.notes.extend(other.notes);
        for w in other.warnings {
            self.warn(w);
        }
    }

    /// Like [`Report::absorb`], prefixing every subject with `scope: `.
    pub fn absorb_scoped(&mut self, scope: &str, mut other: Report) {
        for c in &mut other.checks {
            c.subject = format!("{scope}: {}", c.subject);
        }
        for t in &mut other.tables {
            t.name = format!("{scope}: {}", t.name);
        }
        self.absorb(other);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn find(&self, subject: &str, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.subject == subject && c.name == name)
    }

    pub fn summary(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        match self.first_failure() {
            None => format!("{}: all {} checks passed", self.command, self.checks.len()),
            Some(c) => format!(
                "{}: {failed} of {} checks failed; first: {} / {}",
                self.command,
                self.checks.len(),
                c.subject,
                c.name
            ),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Top<'a> {
            passed: bool,
            #[serde(flatten)]
            report: &'a Report,
        }
        let top = Top { passed: self.passed(), report: self };
        let mut s = serde_json::to_string_pretty(&top).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_keeps_first_witness() {
        let mut t = Tally::new();
        t.record(true, || unreachable!());
        t.record(false, || "a".into());
        t.record(false, || "b".into());
        let mut r = Report::new("x");
        assert!(!r.push("C", "assoc", t));
        assert_eq!(r.checks[0].witness.as_deref(), Some("a"));
        assert_eq!(r.checks[0].examined, 3);
        assert_eq!(r.first_failure().unwrap().name, "assoc");
    }
}
