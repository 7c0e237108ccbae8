//! Structured experiment output shared by all scans.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A constant together with the data that attains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub constant: String,
    pub value: i64,
    /// Element words (parser syntax) in a constant-specific order.
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawViolation {
    pub law: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub kind: String,
    pub structure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
    pub window: BTreeMap<String, i64>,
    pub constants: BTreeMap<String, i64>,
    pub witnesses: Vec<Witness>,
    pub violations: Vec<LawViolation>,
    /// Instance counts per checked law or sampled quantity.
    pub counts: BTreeMap<String, u64>,
    /// Scan-specific sequences (plateau series and the like).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub series: BTreeMap<String, Vec<i64>>,
    pub notes: Vec<String>,
}

impl ScanReport {
    pub fn new(kind: &str, structure: &str) -> Self {
        ScanReport {
            kind: kind.to_string(),
            structure: structure.to_string(),
            axis: None,
            window: BTreeMap::new(),
            constants: BTreeMap::new(),
            witnesses: Vec::new(),
            violations: Vec::new(),
            counts: BTreeMap::new(),
            series: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&mut self, law: &str, elements: Vec<String>) {
        self.violations.push(LawViolation {
            law: law.to_string(),
            elements,
        });
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    /// Records a constant and its witness.
    pub fn constant(&mut self, name: &str, value: i64, elements: Vec<String>) {
        self.constants.insert(name.to_string(), value);
        self.witnesses.retain(|w| w.constant != name);
        self.witnesses.push(Witness {
            constant: name.to_string(),
            value,
            elements,
        });
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.constant == name)
    }
}

/// Keeps the maximum of a quantity with a deterministic witness: larger
/// values win, ties go to the lexicographically smaller witness.
#[derive(Clone, Debug, Default)]
pub struct MaxTracker {
    pub best: Option<(i64, Vec<String>)>,
}

impl MaxTracker {
    pub fn offer(&mut self, value: i64, witness: impl FnOnce() -> Vec<String>) {
        match &self.best {
            Some((v, _)) if *v > value => {}
            Some((v, w)) if *v == value => {
                let cand = witness();
                if cand < *w {
                    self.best = Some((value, cand));
                }
            }
            _ => self.best = Some((value, witness())),
        }
    }

    pub fn merge(&mut self, other: MaxTracker) {
        if let Some((v, w)) = other.best {
            self.offer(v, || w);
        }
    }

    pub fn value(&self) -> Option<i64> {
        self.best.as_ref().map(|b| b.0)
    }
}
