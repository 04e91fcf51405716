//! Table writing for the two output formats.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Formats an `f64` with enough digits to parse back bit for bit.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.17e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Comma-separated values with a header row.
    Csv,
    /// `# key = value` metadata lines followed by a whitespace table.
    Structured,
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.rows.push(row);
    }
}

fn write_table<W: Write>(
    out: &mut W,
    table: &Table,
    meta: &[(&str, String)],
    format: Format,
    dynamic_columns: &[String],
) -> io::Result<()> {
    let names: Vec<&str> = table
        .columns
        .iter()
        .copied()
        .chain(dynamic_columns.iter().map(String::as_str))
        .collect();
    match format {
        Format::Csv => {
            writeln!(out, "{}", names.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Structured => {
            for (k, v) in meta {
                writeln!(out, "# {k} = {v}")?;
            }
            writeln!(out, "columns: {}", names.join(" "))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
                writeln!(out, "{}", cells.join(" "))?;
            }
        }
    }
    Ok(())
}

/// Writes to a file when `path` is given, to stdout otherwise.
pub fn emit_table(
    path: Option<&Path>,
    table: &Table,
    meta: &[(&str, String)],
    format: Format,
    dynamic_columns: &[String],
) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write_table(&mut w, table, meta, format, dynamic_columns)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_table(&mut w, table, meta, format, dynamic_columns)
        }
    }
}
