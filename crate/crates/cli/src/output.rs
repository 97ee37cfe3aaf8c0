use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

/// Failure modes and their exit codes: 2 for usage or parse errors, 3 for
/// violated preconditions.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Precondition(m) => f.write_str(m),
        }
    }
}

pub fn precondition(err: impl fmt::Display) -> CliError {
    CliError::Precondition(err.to_string())
}

/// The common record every command prints. Numbers are decimal strings.
#[derive(Debug, Serialize)]
pub struct RunResult {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nice: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<String>,
    /// 1-based positions.
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(serialize_with = "as_strings")]
    pub worst_subset: Option<Vec<usize>>,
    /// Command-specific fields.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    #[serde(serialize_with = "millis")]
    pub timing_ms: f64,
}

impl RunResult {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            modulus: None,
            subgroup: None,
            exponents: None,
            poly: None,
            value: None,
            method: None,
            nice: None,
            threshold: None,
            worst_subset: None,
            extra: Map::new(),
            timing_ms: 0.0,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    pub fn print(&self, json: bool) {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(self).expect("serializable")
            );
            return;
        }
        let line = |k: &str, v: String| println!("{k:>14}: {v}");
        line("command", self.command.clone());
        if let Some(m) = &self.modulus {
            line("modulus", m.clone());
        }
        if let Some(s) = &self.subgroup {
            line("subgroup", s.clone());
        }
        if let Some(e) = &self.exponents {
            line("exponents", e.join(","));
        }
        if let Some(p) = &self.poly {
            line("poly", p.clone());
        }
        if let Some(v) = &self.value {
            line("value", v.clone());
        }
        if let Some(m) = &self.method {
            line("method", m.clone());
        }
        if let Some(n) = self.nice {
            line("nice", n.to_string());
        }
        if let Some(t) = &self.threshold {
            line("threshold", t.clone());
        }
        if let Some(w) = &self.worst_subset {
            let items: Vec<String> = w.iter().map(usize::to_string).collect();
            line("worst_subset", format!("{{{}}}", items.join(",")));
        }
        for (k, v) in &self.extra {
            match v {
                Value::Array(items) if items.iter().all(Value::is_object) => {
                    println!("{k:>14}:");
                    for item in items {
                        println!("{:>14}  {}", "", render_object(item));
                    }
                }
                other => line(k, render(other)),
            }
        }
        line("timing_ms", format!("{:.3}", self.timing_ms));
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join(","),
        Value::Object(_) => render_object(v),
        other => other.to_string(),
    }
}

fn render_object(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", render(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => render(other),
    }
}

fn as_strings<S: Serializer>(v: &Option<Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|xs| xs.iter().map(usize::to_string).collect::<Vec<_>>())
        .serialize(s)
}

fn millis<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:.3}"))
}
