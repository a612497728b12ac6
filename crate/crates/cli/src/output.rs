use std::io::Write;

use serde_json::{Map, Value};

use crate::args::Format;
use crate::error::CliResult;

/// A flat table whose column names carry their units.
#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub struct Document {
    pub schema: &'static str,
    pub config: Value,
    pub units: Value,
    pub records: Table,
    /// JSON only.
    pub summary: Option<Value>,
    /// JSON only.
    pub findings: Vec<String>,
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => {
                if f == 0.0 || (1e-4..1e15).contains(&f.abs()) {
                    format!("{f}")
                } else {
                    format!("{f:e}")
                }
            }
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

impl Document {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> CliResult<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.records.columns)?;
                for row in &self.records.rows {
                    w.write_record(row.iter().map(csv_field))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let records: Vec<Value> = self
                    .records
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.records.columns.iter().cloned().zip(row.iter().cloned()).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut doc = Map::new();
                doc.insert("schema".into(), Value::from(self.schema));
                doc.insert("config".into(), self.config.clone());
                doc.insert("units".into(), self.units.clone());
                if let Some(s) = &self.summary {
                    doc.insert("summary".into(), s.clone());
                }
                if !self.findings.is_empty() {
                    doc.insert("findings".into(), Value::from(self.findings.clone()));
                }
                doc.insert("records".into(), Value::from(records));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// `f64` cell; non-finite values become `null`.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

pub fn opt(v: Option<f64>) -> Value {
    v.map(num).unwrap_or(Value::Null)
}
