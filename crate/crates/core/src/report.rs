//! Verification reports shared by every checker.

use std::fmt;

use serde::{Deserialize, Serialize};

const MAX_WITNESSES: usize = 20;

/// One failing case: what was checked, the expected and the actual value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checked: 0,
            failed: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, case: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.checked += 1;
        self.failed += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                case: case.into(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Records one comparison; the case label is only built on failure.
    pub fn compare<T, F>(&mut self, expected: &T, actual: &T, case: F)
    where
        T: PartialEq + fmt::Display,
        F: FnOnce() -> String,
    {
        if expected == actual {
            self.pass();
        } else {
            self.fail(case(), expected, actual);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report in, prefixing its witness cases with its suite.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failed += other.failed;
        for mut w in other.witnesses {
            if self.witnesses.len() >= MAX_WITNESSES {
                break;
            }
            w.case = format!("{}: {}", other.suite, w.case);
            self.witnesses.push(w);
        }
        self.notes.extend(other.notes);
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        format!(
            "{}: {} ({} checked, {} failed)",
            self.suite, verdict, self.checked, self.failed
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        for w in &self.witnesses {
            writeln!(f, "  witness {}", w.case)?;
            writeln!(f, "    expected {}", w.expected)?;
            writeln!(f, "    actual   {}", w.actual)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
