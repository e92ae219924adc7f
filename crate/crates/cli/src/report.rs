use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 1,
            Status::Inconclusive => 2,
        }
    }
}

/// Command result before the command echo and input data are attached.
#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub results: Map<String, Value>,
}

impl Report {
    pub fn new(status: Status) -> Self {
        Report {
            status,
            results: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn into_value(self, command: &[String], seed: u64, input: Option<Value>) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), json!(command.join(" ")));
        top.insert("seed".into(), json!(seed.to_string()));
        if let Some(input) = input {
            top.insert("input".into(), input);
        }
        top.insert("status".into(), json!(self.status.as_str()));
        top.insert("results".into(), Value::Object(self.results));
        stringify_numbers(Value::Object(top))
    }
}

/// Reports carry every number as a string, counts included.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(m) => Value::Object(
            m.into_iter()
                .map(|(k, x)| (k, stringify_numbers(x)))
                .collect(),
        ),
        other => other,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn write_value(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v) {
        if s.is_empty() {
            out.push_str(&format!("{pad}{key}: \"\"\n"));
        } else {
            out.push_str(&format!("{pad}{key}: {s}\n"));
        }
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in items.iter().enumerate() {
                write_value(out, indent + 1, &format!("[{i}]"), x);
            }
        }
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                write_value(out, indent + 1, k, x);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Plain-text rendering: one `key: value` line per leaf, nested by indent.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            write_value(&mut out, 0, k, x);
        }
    }
    out
}
