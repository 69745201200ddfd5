//! Machine-readable result of a single property check.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    /// First violating coefficient, if any.
    pub witness: Option<Value>,
}

impl Verdict {
    pub fn new(check: impl Into<String>, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Self { check: check.into(), params, pass: true, witness: None }
    }

    /// Records a failure; only the first witness is kept.
    pub fn fail(&mut self, witness: Value) {
        if self.pass {
            self.witness = Some(witness);
        }
        self.pass = false;
    }

    pub fn with_result(mut self, witness: Option<Value>) -> Self {
        if let Some(w) = witness {
            self.fail(w);
        }
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "params": self.params,
            "pass": self.pass,
            "witness": self.witness.clone().unwrap_or(Value::Null),
        })
    }
}

/// True iff every verdict passed.
pub fn all_pass<'a>(vs: impl IntoIterator<Item = &'a Verdict>) -> bool {
    vs.into_iter().all(|v| v.pass)
}
