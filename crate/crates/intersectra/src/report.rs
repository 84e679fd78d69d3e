//! Machine-readable run reports.
//!
//! `serde_json` maps are ordered by key, so rendering a report is stable:
//! identical inputs give byte-identical documents.

use intersectra_core::search::SearchResult;
use intersectra_core::{SetFamily, VSet};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Value,
    /// The named result the run exercises, if any.
    pub anchor: Option<String>,
    /// Set for verification runs.
    pub pass: Option<bool>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            inputs: Map::new(),
            outputs: Value::Null,
            anchor: None,
            pass: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        doc.insert("inputs".into(), Value::Object(self.inputs.clone()));
        doc.insert("outputs".into(), self.outputs.clone());
        if let Some(a) = &self.anchor {
            doc.insert("paper_anchor".into(), json!(a));
        }
        if let Some(p) = self.pass {
            doc.insert("pass".into(), json!(p));
        }
        Value::Object(doc)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports are plain JSON")
    }
}

pub fn set_json(s: &VSet) -> Value {
    Value::Array(s.iter().map(Value::from).collect())
}

pub fn family_json(f: &SetFamily) -> Value {
    Value::Array(f.iter().map(set_json).collect())
}

/// `{params, value, optimal, witness, nodes, elapsed_ms, classes?}`.
pub fn search_json(res: &SearchResult) -> Value {
    let mut doc = Map::new();
    doc.insert(
        "params".into(),
        json!({ "n": res.params.n, "r": res.params.r, "k": res.params.k }),
    );
    doc.insert("value".into(), json!(res.value));
    doc.insert("optimal".into(), json!(res.optimal));
    doc.insert("witness".into(), family_json(&res.witness));
    doc.insert("nodes".into(), json!(res.nodes_expanded));
    let elapsed = res.elapsed.map_or(0, |d| d.as_millis() as u64);
    doc.insert("elapsed_ms".into(), json!(elapsed));
    if !res.classes.is_empty() {
        doc.insert(
            "classes".into(),
            Value::Array(res.classes.iter().map(family_json).collect()),
        );
    }
    Value::Object(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_optional_fields_omitted() {
        let r = RunReport::new("analyze")
            .input("k", json!([1]))
            .input("file", "d.txt");
        let text = r.render();
        let keys: Vec<_> = ["command", "inputs", "outputs"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"file\"").unwrap() < text.find("\"k\"").unwrap());
        assert!(!text.contains("pass"));
        assert_eq!(r.render(), text);
    }
}
