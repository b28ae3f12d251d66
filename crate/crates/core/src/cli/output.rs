//! Tabular output in CSV or JSON.
//!
//! CSV floats are written with 17 significant digits so that every value
//! round-trips; JSON uses the shortest round-trip representation.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A header plus rows of equal width.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    /// First non-finite float, as `(row, column)`.
    pub fn first_non_finite(&self) -> Option<(usize, &'static str)> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            row.iter().zip(&self.columns).find_map(|(c, name)| match c {
                Cell::Float(v) if !v.is_finite() => Some((i, *name)),
                _ => None,
            })
        })
    }

    pub fn to_csv(&self) -> io::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }

    pub fn to_json(&self) -> io::Result<Vec<u8>> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(name, cell)| (name.to_string(), cell.json_value()))
                    .collect();
                Value::Object(map)
            })
            .collect();
        let mut bytes = serde_json::to_vec_pretty(&Value::Array(records))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let bytes = match format {
            Format::Csv => self.to_csv()?,
            Format::Json => self.to_json()?,
        };
        match out {
            Some(path) => File::create(path)?.write_all(&bytes),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(&bytes)?;
                stdout.flush()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> Table {
        let mut t = Table::new(&["k", "value", "label"]);
        t.push(vec![Cell::from(3u32), Cell::from(0.1), Cell::from("a")]);
        t.push(vec![Cell::from(4u32), Cell::Empty, Cell::from(true)]);
        t
    }

    #[test]
    fn csv_has_header_and_seventeen_digit_floats() {
        let csv = String::from_utf8(sample_table().to_csv().unwrap()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,value,label");
        assert_eq!(lines[1], "3,1.0000000000000001e-1,a");
        assert_eq!(lines[2], "4,,true");
        let parsed: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(parsed, 0.1);
    }

    #[test]
    fn json_records_share_field_names() {
        let json = String::from_utf8(sample_table().to_json().unwrap()).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        for rec in arr {
            let keys: Vec<&String> = rec.as_object().unwrap().keys().collect();
            assert_eq!(keys, ["k", "value", "label"]);
        }
        assert_eq!(arr[1]["value"], Value::Null);
    }

    #[test]
    fn non_finite_values_are_detected() {
        let mut t = sample_table();
        assert_eq!(t.first_non_finite(), None);
        t.push(vec![Cell::from(5u32), Cell::from(f64::NAN), Cell::Empty]);
        assert_eq!(t.first_non_finite(), Some((2, "value")));
    }
}
