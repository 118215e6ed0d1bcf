//! CSV and JSON-lines emitters.
//!
//! CSV is a header row followed by comma-separated fields with no quoting;
//! every field is numeric, boolean or a bare token. JSON mode writes one
//! object per row, keyed by the same column names.

use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(csv_field).collect();
                    writeln!(out, "{}", fields.join(","))?;
                }
            }
            Format::Json => {
                for row in &self.rows {
                    let object: Map<String, Value> = self
                        .columns
                        .iter()
                        .map(|c| c.to_string())
                        .zip(row.iter().cloned())
                        .collect();
                    writeln!(out, "{}", Value::Object(object))?;
                }
            }
        }
        Ok(())
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key=value` pairs on one line, or one JSON object.
pub fn write_summary(
    format: Format,
    pairs: &[(&str, Value)],
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            let line: Vec<String> = pairs
                .iter()
                .map(|(k, v)| format!("{k}={}", csv_field(v)))
                .collect();
            writeln!(out, "{}", line.join(" "))
        }
        Format::Json => {
            let object: Map<String, Value> = pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            writeln!(out, "{}", Value::Object(object))
        }
    }
}
