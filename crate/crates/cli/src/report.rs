use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};
use unfolding_core::rational::{approx, format_rational};
use unfolding_core::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Tabular output: one CSV line per row, or a JSON array of objects.
/// Every value is a string; rationals are exact `p/q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> =
                            self.header.iter().cloned().zip(r.iter().map(|v| Value::String(v.clone()))).collect();
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &rows)?;
                writeln!(out)
            }
        }
    }
}

/// Key-value output: a two-column `key,value` CSV, or one JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fields(pub Vec<(String, String)>);

impl Fields {
    pub fn add(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.0.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                let mut t = Table::new(["key", "value"]);
                for (k, v) in &self.0 {
                    t.push(vec![k.clone(), v.clone()]);
                }
                t.write(Format::Csv, out)
            }
            Format::Json => {
                let obj: Map<String, Value> = self.0.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                serde_json::to_writer_pretty(&mut *out, &Value::Object(obj))?;
                writeln!(out)
            }
        }
    }
}

pub fn q(r: &Rational) -> String {
    format_rational(r)
}

pub fn num_den(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

/// Float rendering for the `*_approx` convenience columns.
pub fn f(r: &Rational) -> String {
    format!("{:.9}", approx(r))
}
