use std::io::{self, Write};

use anyhow::Result;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Writes a stream of rows to stdout, flushing after each so long sweeps
/// show progress. Tables use fixed-width right-aligned columns.
pub struct Emitter {
    format: Format,
    columns: Vec<(&'static str, usize)>,
    header_done: bool,
    csv: Option<csv::Writer<io::Stdout>>,
}

impl Emitter {
    pub fn new(format: Format, columns: &[(&'static str, usize)]) -> Self {
        let csv = (format == Format::Csv).then(|| csv::Writer::from_writer(io::stdout()));
        Self {
            format,
            columns: columns.to_vec(),
            header_done: false,
            csv,
        }
    }

    pub fn row<T: Serialize>(&mut self, row: &T) -> Result<()> {
        match self.format {
            Format::Json => {
                let mut out = io::stdout().lock();
                serde_json::to_writer(&mut out, row)?;
                writeln!(out)?;
                out.flush()?;
            }
            Format::Csv => {
                let w = self.csv.as_mut().expect("csv writer");
                w.serialize(row)?;
                w.flush()?;
            }
            Format::Table => {
                let value = serde_json::to_value(row)?;
                let mut out = io::stdout().lock();
                if !self.header_done {
                    let header: Vec<String> =
                        self.columns.iter().map(|&(name, w)| format!("{name:>w$}")).collect();
                    writeln!(out, "{}", header.join(" "))?;
                    self.header_done = true;
                }
                let cells: Vec<String> = self
                    .columns
                    .iter()
                    .map(|&(name, w)| format!("{:>w$}", cell(value.get(name))))
                    .collect();
                writeln!(out, "{}", cells.join(" "))?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => "-".into(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Bool(true)) => "yes".into(),
        Some(Value::Bool(false)) => "NO".into(),
        Some(other) => other.to_string(),
    }
}
