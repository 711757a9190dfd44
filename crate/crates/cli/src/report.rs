use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

/// Report shared by every command. Fields that a command does not produce
/// stay empty so the schema is the same everywhere.
#[derive(Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub input_hash: String,
    pub summary: Value,
    pub cells: Vec<Value>,
    pub pairs: Vec<Value>,
    pub identities: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iv: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub informational: Option<Value>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub exit: i32,
}

impl Report {
    pub fn new(config: RunConfig, input_hash: String) -> Self {
        Report {
            config,
            input_hash,
            summary: Value::Null,
            cells: Vec::new(),
            pairs: Vec::new(),
            identities: Vec::new(),
            rows: Vec::new(),
            iv: None,
            failures: Vec::new(),
            scan: None,
            informational: None,
            text: String::new(),
            exit: 0,
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn to_values<T: Serialize>(items: &[T]) -> Vec<Value> {
    items.iter().map(|x| serde_json::to_value(x).expect("record serializes")).collect()
}

pub fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}
