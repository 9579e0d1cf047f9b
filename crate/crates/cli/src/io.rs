//! Report tables, their CSV and JSON encodings, and CSV readers.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::CliResult;

/// Full precision: 17 significant digits. Negative zero is written as zero.
pub fn fmt_f64(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    /// Written as `AxB` in CSV and as an array in JSON.
    Grid(usize, usize),
    Empty,
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Float(v) => fmt_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Grid(a, b) => format!("{a}x{b}"),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Grid(a, b) => Value::from(vec![*a, *b]),
            Cell::Empty => Value::Null,
        }
    }
}

/// A header, rows, and `key=value` notes (CSV footer comments).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<(String, String)>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.notes.push((key.into(), value.into()));
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> CliResult<()> {
        {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&self.header)?;
            for row in &self.rows {
                w.write_record(row.iter().map(Cell::csv_field))?;
            }
            w.flush()?;
        }
        for (k, v) in &self.notes {
            writeln!(out, "# {k}={v}")?;
        }
        Ok(())
    }

    /// Single-row tables become a flat object; others an object with a
    /// `rows` array. Notes are added as string fields.
    pub fn to_json(&self) -> Value {
        let row_object = |row: &Vec<Cell>| -> Map<String, Value> {
            self.header
                .iter()
                .zip(row)
                .map(|(k, c)| (k.to_string(), c.json()))
                .collect()
        };
        let mut obj = if self.rows.len() == 1 {
            row_object(&self.rows[0])
        } else {
            let mut m = Map::new();
            m.insert("columns".into(), Value::from(self.header.clone()));
            m.insert(
                "rows".into(),
                self.rows
                    .iter()
                    .map(|r| Value::Object(row_object(r)))
                    .collect(),
            );
            m
        };
        for (k, v) in &self.notes {
            obj.insert(k.clone(), Value::from(v.as_str()));
        }
        Value::Object(obj)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        writeln!(out)?;
        Ok(())
    }
}

/// `path` or standard output.
pub fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Rows of a CSV file with a header line; `#` lines are skipped.
pub fn read_rows<T: DeserializeOwned>(input: impl Read) -> CliResult<Vec<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    rdr.deserialize().map(|r| r.map_err(Into::into)).collect()
}

/// One row of `spectrum` output.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct SpectrumRow {
    pub index: usize,
    pub eigenvalue: f64,
    pub weight: f64,
}

pub fn read_spectrum_csv(input: impl Read) -> CliResult<Vec<SpectrumRow>> {
    read_rows(input)
}

/// Comment lines `# key=value` of a CSV file.
pub fn read_notes(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
