//! CSV trajectory tables: a mandatory header row and one configuration per row.
//!
//! Values are written in the shortest decimal form that parses back to the identical
//! `f64` (never more than 17 significant digits), so re-reading is bit-exact.

use std::io::{Read, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error("row {row}, column `{column}`: cannot parse `{value}` as a finite number")]
    Parse {
        row: usize,
        column: String,
        value: String,
    },
}

/// Column layout of a trajectory table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Columns {
    /// `rho_1 .. rho_n`
    Displacements(usize),
    /// `rho_re, rho_im`
    Clarke,
    /// `l_1 .. l_n`
    Lengths(usize),
}

impl Columns {
    pub fn names(self) -> Vec<String> {
        match self {
            Columns::Displacements(n) => (1..=n).map(|i| format!("rho_{i}")).collect(),
            Columns::Clarke => vec!["rho_re".to_string(), "rho_im".to_string()],
            Columns::Lengths(n) => (1..=n).map(|i| format!("l_{i}")).collect(),
        }
    }
}

/// Pose output columns: `x, y, z, r11 .. r33`.
pub fn pose_columns() -> Vec<String> {
    let mut names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    for i in 1..=3 {
        for j in 1..=3 {
            names.push(format!("r{i}{j}"));
        }
    }
    names
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    /// Fails unless the header is exactly `expected`.
    pub fn expect_columns(&self, expected: &[String]) -> Result<(), TableError> {
        if self.header == expected {
            Ok(())
        } else {
            Err(TableError::Schema(format!(
                "expected columns [{}], found [{}]",
                expected.join(","),
                self.header.join(",")
            )))
        }
    }
}

pub fn parse_value(text: &str) -> Option<f64> {
    text.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn format_value(value: f64) -> String {
    let magnitude = value.abs();
    if value == 0.0 || (1e-5..1e16).contains(&magnitude) {
        format!("{value}")
    } else {
        format!("{value:e}")
    }
}

pub fn read_table<R: Read>(reader: R) -> Result<Table, TableError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = csv.headers()?.iter().map(str::to_string).collect();
    if header.is_empty() || header.iter().all(|h| h.is_empty()) {
        return Err(TableError::Schema("missing header row".into()));
    }
    let mut table = Table::new(header);
    for (index, record) in csv.records().enumerate() {
        let record = record?;
        let row = index + 1;
        if record.len() != table.header.len() {
            return Err(TableError::Schema(format!(
                "row {row} has {} cells, header has {}",
                record.len(),
                table.header.len()
            )));
        }
        let values = record
            .iter()
            .zip(&table.header)
            .map(|(cell, column)| {
                parse_value(cell).ok_or_else(|| TableError::Parse {
                    row,
                    column: column.clone(),
                    value: cell.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.rows.push(values);
    }
    Ok(table)
}

pub fn write_table<W: Write>(writer: W, table: &Table) -> Result<(), TableError> {
    let mut csv = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    csv.write_record(&table.header)?;
    for row in &table.rows {
        csv.write_record(row.iter().map(|v| format_value(*v)))?;
    }
    csv.flush()?;
    Ok(())
}
