//! The machine-readable record every command emits, in CSV or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Count(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Float(x) if x.is_nan() => "nan".into(),
            Cell::Float(x) if *x > 0.0 => "inf".into(),
            Cell::Float(_) => "-inf".into(),
            Cell::Count(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Float(x) if x.is_finite() => {
                Value::Number(Number::from_str(&format!("{x:.16e}")).expect("formatted float parses"))
            }
            Cell::Float(_) => Value::Null,
            Cell::Count(n) => Value::Number((*n).into()),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            params: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    /// Appends a row; panics if it does not carry every declared column.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the declared columns");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                Value::Object(obj)
            })
            .collect();
        let params: Map<String, Value> =
            self.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let mut doc = Map::new();
        doc.insert("schema_version".into(), Value::String(self.schema_version.clone()));
        doc.insert("command".into(), Value::String(self.command.clone()));
        doc.insert("params".into(), Value::Object(params));
        doc.insert("columns".into(), Value::Array(self.columns.iter().cloned().map(Value::String).collect()));
        doc.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut r = OutputRecord::new("demo", &["a", "b", "verdict"]);
        r.param("snr", 1.0);
        r.push(vec![Cell::Float(0.1), Cell::Count(7), Cell::Text("pass".into())]);
        r.push(vec![Cell::Float(f64::INFINITY), Cell::Count(0), Cell::Text("fail".into())]);
        r
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "a,b,verdict");
        assert_eq!(lines[1], "1.0000000000000001e-1,7,pass");
        assert_eq!(lines[2], "inf,0,fail");
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["params"]["snr"], "1");
        assert_eq!(v["rows"][0]["b"], 7);
        assert!(v["rows"][1]["a"].is_null());
        assert_eq!(v["rows"][0]["a"].as_f64().unwrap(), 0.1);
        assert!(sample().to_json().contains("1.0000000000000001e-1"));
    }

    #[test]
    #[should_panic]
    fn ragged_rows_rejected() {
        OutputRecord::new("x", &["a", "b"]).push(vec![Cell::Float(1.0)]);
    }
}
