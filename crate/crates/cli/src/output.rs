//! Result envelope, exit codes and rendering.

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotFound,
    ProvablyNone,
    Indeterminate,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotFound => "not-found",
            Status::ProvablyNone => "provably-none",
            Status::Indeterminate => "indeterminate",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotFound | Status::Indeterminate => 1,
            Status::Error => 2,
            Status::ProvablyNone => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommandResult {
    pub command: String,
    pub status: Status,
    pub payload: Map<String, Value>,
    pub citations: Vec<&'static str>,
    /// Replaces the generic key/value table.
    pub table: Option<String>,
}

impl CommandResult {
    pub fn new(command: &str, status: Status, payload: Value) -> Self {
        let payload = match payload {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        CommandResult { command: command.to_string(), status, payload, citations: Vec::new(), table: None }
    }

    pub fn error(command: &str, message: impl Into<String>) -> Self {
        Self::new(command, Status::Error, json!({ "message": message.into() }))
    }

    pub fn cite(mut self, labels: &[&'static str]) -> Self {
        self.citations.extend_from_slice(labels);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status.as_str(),
            "payload": self.payload,
            "citations": self.citations,
        })
    }

    pub fn render_table(&self) -> String {
        if let Some(t) = &self.table {
            return t.clone();
        }
        let mut rows = vec![("command".to_string(), self.command.clone()), ("status".to_string(), self.status.as_str().to_string())];
        for (k, v) in &self.payload {
            flatten(k, v, &mut rows);
        }
        if !self.citations.is_empty() {
            rows.push(("citations".into(), self.citations.join(", ")));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|i| i.iter().all(|y| y.is_string()))) => {
            Some(a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(" ; "))
        }
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    if let Some(s) = scalar(v) {
        rows.push((prefix.to_string(), s));
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{prefix}.{k}"), x, rows);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        _ => unreachable!(),
    }
}
