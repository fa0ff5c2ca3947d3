use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::io::Loaded;

#[derive(Clone, Debug, Serialize)]
pub struct InputRef {
    pub path: String,
    pub sha256: String,
}

impl From<&Loaded> for InputRef {
    fn from(l: &Loaded) -> Self {
        InputRef { path: l.path.display().to_string(), sha256: l.sha256.clone() }
    }
}

/// Self-describing JSON report: tool identity, hashed inputs, the
/// subcommand's verdict fields and wall time.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub subcommand: &'static str,
    pub inputs: Vec<InputRef>,
    pub verdicts: Map<String, Value>,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(subcommand: &'static str) -> Self {
        RunReport { subcommand, inputs: Vec::new(), verdicts: Map::new(), elapsed: Duration::ZERO }
    }

    pub fn input(&mut self, l: &Loaded) {
        self.inputs.push(l.into());
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.verdicts.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("tool".into(), json!("cws"));
        out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        out.insert("subcommand".into(), json!(self.subcommand));
        out.insert("inputs".into(), serde_json::to_value(&self.inputs).expect("serializable"));
        for (k, v) in &self.verdicts {
            out.insert(k.clone(), v.clone());
        }
        out.insert("elapsed_ms".into(), json!(self.elapsed.as_secs_f64() * 1e3));
        Value::Object(out)
    }
}
