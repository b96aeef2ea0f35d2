//! Flat, ordered key/value reports with two renderings: human-oriented text
//! and a machine-readable `key=value` form with stable field order.

use std::fmt::Display;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            match format {
                Format::Text => {
                    out.push_str(key);
                    out.push_str(": ");
                }
                Format::Structured => {
                    out.push_str(key);
                    out.push('=');
                }
            }
            out.push_str(value);
            out.push('\n');
        }
        out
    }
}
