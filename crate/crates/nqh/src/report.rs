//! Deterministic reports: ordered fields, pass/fail lines and advisory notes.

use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    /// Where an expected value comes from, for scenario expectations.
    pub source: Option<String>,
    /// Counterexample or mismatch description.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub fields: Vec<(String, String)>,
    pub checks: Vec<CheckLine>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, subject: &str) -> Self {
        Report { command: command.into(), subject: subject.into(), ..Default::default() }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push(CheckLine { name: name.into(), passed, source: None, detail: None });
    }

    pub fn check_with(&mut self, name: &str, passed: bool, source: Option<&str>, detail: Option<String>) {
        self.checks.push(CheckLine { name: name.into(), passed, source: source.map(Into::into), detail });
    }

    pub fn checks_from(&mut self, lines: impl IntoIterator<Item = (String, bool)>) {
        for (name, ok) in lines {
            self.check(&name, ok);
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("== {} {}\n", self.command, self.subject);
        for (k, v) in &self.fields {
            if v.contains('\n') {
                s.push_str(&format!("{k}:\n"));
                for line in v.lines() {
                    s.push_str(&format!("  {line}\n"));
                }
            } else {
                s.push_str(&format!("{k}: {v}\n"));
            }
        }
        for c in &self.checks {
            s.push_str(if c.passed { "[pass] " } else { "[FAIL] " });
            s.push_str(&c.name);
            if let Some(src) = &c.source {
                s.push_str(&format!(" ({src})"));
            }
            if let Some(d) = &c.detail {
                s.push_str(&format!(": {d}"));
            }
            s.push('\n');
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s.push_str(&format!("checks passed: {}/{}\n", self.passed_count(), self.checks.len()));
        s.push_str(if self.passed() { "result: pass\n" } else { "result: FAIL\n" });
        s
    }

    pub fn to_json(&self) -> Value {
        let mut fields = Map::new();
        for (k, v) in &self.fields {
            fields.insert(k.clone(), Value::String(v.clone()));
        }
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), Value::String(c.name.clone()));
                m.insert("passed".into(), Value::Bool(c.passed));
                if let Some(src) = &c.source {
                    m.insert("source".into(), Value::String(src.clone()));
                }
                if let Some(d) = &c.detail {
                    m.insert("detail".into(), Value::String(d.clone()));
                }
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("subject".into(), Value::String(self.subject.clone()));
        m.insert("fields".into(), Value::Object(fields));
        m.insert("checks".into(), Value::Array(checks));
        m.insert("notes".into(), Value::Array(self.notes.iter().cloned().map(Value::String).collect()));
        m.insert("passed".into(), Value::Bool(self.passed()));
        Value::Object(m)
    }
}
