use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flat view of a payload for CSV output.
#[derive(Debug, Default)]
pub struct Rows {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Rows {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a command produced: the JSON payload, its CSV rendering and the
/// process exit code.
pub struct Emitted {
    pub command: &'static str,
    pub payload: Value,
    pub rows: Rows,
    pub exit: i32,
}

#[derive(Serialize)]
struct Record<'a> {
    schema_version: &'static str,
    command: &'a str,
    payload: &'a Value,
}

pub fn write(out: &mut impl Write, emitted: &Emitted, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let record = Record {
                schema_version: SCHEMA_VERSION,
                command: emitted.command,
                payload: &emitted.payload,
            };
            serde_json::to_writer_pretty(&mut *out, &record)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            w.write_record(&emitted.rows.header)?;
            for row in &emitted.rows.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
    }
}

/// `3,3,2,2` style rendering used in records.
pub fn joined(values: &[i64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
