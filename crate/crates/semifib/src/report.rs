//! JSON reports of the verification suites.
//!
//! Check records are sorted by id and suites by name, so a report depends
//! only on `(suite, seed, trials)`.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Named input and output values of one sample, enough to replay it.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Witness(Map<String, Value>);

impl Witness {
    pub fn new() -> Self {
        Witness(Map::new())
    }

    pub fn with<T: Serialize>(mut self, name: &str, value: T) -> Self {
        // plain numbers and arrays of numbers never fail to serialize
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.0.insert(name.to_owned(), v);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.0.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The formula or statement the check exercises.
    pub paper_ref: String,
    pub status: Status,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: u64,
    pub max_abs_err: f64,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        serde_json::to_string_pretty(self)
    }
}

/// Several suites run with one seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub failures: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn new(seed: u64, trials: usize, mut suites: Vec<SuiteReport>) -> Self {
        suites.sort_by(|a, b| a.suite.cmp(&b.suite));
        let failures = suites.iter().map(|s| s.failures).sum();
        VerifyReport { seed, trials, failures, suites }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        serde_json::to_string_pretty(self)
    }
}
