//! Tables rendered as CSV (12 significant digits) or JSON (17).

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

pub const CSV_DIGITS: usize = 12;
pub const JSON_DIGITS: usize = 17;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
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

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// x in scientific notation with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits - 1, x)
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) if v.is_finite() => fmt_sig(*v, CSV_DIGITS),
        Cell::Num(v) if v.is_nan() => "NaN".into(),
        Cell::Num(v) => if *v > 0.0 { "inf" } else { "-inf" }.into(),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(t) => t.clone(),
    }
}

fn json_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) if v.is_finite() => fmt_sig(*v, JSON_DIGITS),
        Cell::Num(_) => "null".into(),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(t) => serde_json::to_string(t).expect("string serialises"),
    }
}

pub fn render(table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(&table.columns).map_err(io)?;
            for row in &table.rows {
                w.write_record(row.iter().map(csv_cell)).map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
        }
        Format::Json => {
            let mut s = String::from("[\n");
            for (i, row) in table.rows.iter().enumerate() {
                let fields: Vec<String> = table
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| format!("{}: {}", serde_json::to_string(k).unwrap(), json_cell(c)))
                    .collect();
                s.push_str("  {");
                s.push_str(&fields.join(", "));
                s.push('}');
                if i + 1 < table.rows.len() {
                    s.push(',');
                }
                s.push('\n');
            }
            s.push_str("]\n");
            Ok(s)
        }
    }
}

pub fn emit(table: &Table, format: Format, out: Option<&Path>) -> Result<()> {
    let text = render(table, format)?;
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
