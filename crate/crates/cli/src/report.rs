use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Result of one command. Field order is insertion order in both
/// renderings, so text and JSON carry the same data in the same sequence.
#[derive(Debug, Clone)]
pub struct CommandReport {
    command: String,
    input_digest: String,
    strategy: Option<String>,
    results: Map<String, Value>,
    timing_ms: Option<u64>,
}

impl CommandReport {
    /// `input` is everything the result depends on: normalized arguments
    /// plus the contents of any input file.
    pub fn new(command: String, input: &[u8]) -> Self {
        Self {
            command,
            input_digest: hex::encode(Sha256::digest(input)),
            strategy: None,
            results: Map::new(),
            timing_ms: None,
        }
    }

    pub fn set_strategy(&mut self, s: impl Into<String>) {
        self.strategy = Some(s.into());
    }

    pub fn set_timing(&mut self, ms: u64) {
        self.timing_ms = Some(ms);
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("input_digest".into(), self.input_digest.clone().into());
        if let Some(s) = &self.strategy {
            m.insert("strategy".into(), s.clone().into());
        }
        m.insert("results".into(), Value::Object(self.results.clone()));
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), t.into());
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input_digest: {}\n", self.input_digest));
        if let Some(s) = &self.strategy {
            out.push_str(&format!("strategy: {s}\n"));
        }
        for (k, v) in &self.results {
            write_value(&mut out, k, v, 0);
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing_ms: {t}\n"));
        }
        out
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in m {
                write_value(out, k, v, indent + 1);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                write_value(out, &format!("[{i}]"), item, indent + 1);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
        }
        Value::String(s) if s.contains('\n') => {
            out.push_str(&format!("{pad}{key}: |\n"));
            for line in s.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings_share_field_order() {
        let mut r = CommandReport::new("gamma Z_2".into(), b"Z_2");
        r.push("input", "Z_2");
        r.push("gamma", "Z_4");
        r.push("factors", vec![4]);
        let text = r.to_text();
        assert!(text.find("input:").unwrap() < text.find("gamma:").unwrap());
        let json = r.to_json();
        let keys: Vec<&String> = json["results"].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["input", "gamma", "factors"]);
        assert!(text.contains("factors: [4]"));
    }
}
