use std::fmt::Write as _;

use evenk::arith::Factorization;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};

/// One command invocation: what was asked, what came out, and which rules
/// the answer rests on. Keys serialize sorted, so equal inputs give
/// byte-identical records.
#[derive(Debug, Clone)]
pub struct Record {
    command: &'static str,
    inputs: Map<String, Value>,
    result: Map<String, Value>,
    provenance: Vec<String>,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Record { command, inputs: Map::new(), result: Map::new(), provenance: Vec::new() }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn result(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.result.insert(key.to_owned(), value.into());
        self
    }

    pub fn provenance<I, S>(mut self, tags: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.provenance.extend(tags.into_iter().map(Into::into));
        self
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), self.command.into());
        top.insert("inputs".into(), Value::Object(self.inputs.clone()));
        top.insert("result".into(), Value::Object(self.result.clone()));
        top.insert("provenance".into(), self.provenance.clone().into());
        Value::Object(top).to_string()
    }

    /// `key: value` lines for people.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.result {
            let _ = writeln!(out, "{key}: {}", plain(value));
        }
        if !self.provenance.is_empty() {
            let _ = writeln!(out, "rules: {}", self.provenance.join(", "));
        }
        out
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_string) => {
            items.iter().map(plain).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string(),
    }
}

pub fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// Always `num/den`, already reduced.
pub fn rational(q: &BigRational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

/// Ascending `[prime, exponent]` pairs.
pub fn factor_pairs(f: &Factorization) -> Value {
    f.iter()
        .map(|(p, e)| Value::Array(vec![int(p), Value::from(e)]))
        .collect::<Vec<_>>()
        .into()
}
