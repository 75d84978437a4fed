use std::fmt::Display;

/// Output of one command: prose for people and ordered `key=value` fields
/// for scripts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<String>,
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    /// Prose line and machine field at once.
    pub fn both(&mut self, text: impl Into<String>, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.line(text).field(key, value)
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub fn emit_human(report: &Report) -> String {
    let mut out = String::new();
    for l in &report.lines {
        out.push_str(l);
        out.push('\n');
    }
    out
}

/// One `key=value` line per field, in insertion order. Newlines inside
/// values are flattened to spaces.
pub fn emit_machine(report: &Report) -> String {
    let mut out = String::new();
    for (k, v) in &report.fields {
        out.push_str(k);
        out.push('=');
        out.push_str(&v.replace('\n', " "));
        out.push('\n');
    }
    out
}
