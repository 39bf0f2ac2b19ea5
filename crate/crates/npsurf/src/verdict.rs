//! Verdicts with full hypothesis bookkeeping.
//!
//! Every decision procedure returns one of these: the outcome, the tested
//! index p, every hypothesis that was checked with the numbers behind it,
//! the witnessing divisor classes (a failure always carries at least one),
//! an optional conjecture the verdict is conditional on, and free-form notes.
//! The serialized field names are stable and consumed by downstream tooling.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lattice::DivisorClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    HoldsNp,
    FailsNp,
    HypothesisNotMet,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub values: BTreeMap<String, i64>,
}

/// A divisor class together with its pairing data against the polarization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub coords: Vec<i64>,
    pub degree: i64,
    pub self_int: i64,
}

impl Witness {
    pub fn class(&self) -> DivisorClass {
        DivisorClass::new(self.coords.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub p: u32,
    pub hypotheses: Vec<Hypothesis>,
    pub witnesses: Vec<Witness>,
    /// Present when the stated outcome relies on an unproven conjecture;
    /// serialized even when absent so consumers never have to guess.
    pub conditional_on: Option<String>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(outcome: Outcome, p: u32) -> Self {
        Verdict {
            outcome,
            p,
            hypotheses: Vec::new(),
            witnesses: Vec::new(),
            conditional_on: None,
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(mut self, name: &str, satisfied: bool, values: &[(&str, i64)]) -> Self {
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            satisfied,
            values: values
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
        });
        self
    }

    pub fn witness(mut self, witness: Witness) -> Self {
        self.witnesses.push(witness);
        self
    }

    pub fn witnesses(mut self, witnesses: impl IntoIterator<Item = Witness>) -> Self {
        self.witnesses.extend(witnesses);
        self
    }

    pub fn conditional_on(mut self, conjecture: &str) -> Self {
        self.conditional_on = Some(conjecture.to_string());
        self
    }

    pub fn note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_field_names() {
        let v = Verdict::new(Outcome::FailsNp, 2)
            .hypothesis("threshold", true, &[("l2", 46)])
            .witness(Witness {
                coords: vec![0, 1],
                degree: 1,
                self_int: 0,
            })
            .note("numerical witness");
        let json = v.to_json();
        for key in [
            "\"outcome\":\"fails_np\"",
            "\"p\":2",
            "\"hypotheses\"",
            "\"witnesses\"",
            "\"coords\"",
            "\"degree\"",
            "\"self_int\"",
            "\"conditional_on\":null",
            "\"notes\"",
        ] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
        let back: Verdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
