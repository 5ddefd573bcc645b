//! Pass/fail outcome of a verification, with a witness trail.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub pass: bool,
    /// Ordered key/value evidence; on failure the offending entry comes first.
    pub witness: Vec<(String, String)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report { pass: true, witness: Vec::new(), notes: Vec::new() }
    }

    pub fn record(&mut self, key: impl Into<String>, value: impl ToString) {
        self.witness.push((key.into(), value.to_string()));
    }

    /// Records a check; a failure flips `pass` and is kept as evidence.
    pub fn check(&mut self, key: impl Into<String>, ok: bool, detail: impl ToString) {
        let key = key.into();
        if !ok {
            self.pass = false;
            self.witness.insert(0, (key, detail.to_string()));
        } else {
            self.witness.push((key, detail.to_string()));
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.pass &= other.pass;
        for (k, v) in other.witness {
            self.witness.push((alloc::format!("{prefix}.{k}"), v));
        }
        self.notes.extend(other.notes);
    }
}
