//! Record serialisation: canonical text lines and JSON lines.

use std::io::{BufRead, Write};
use std::str::FromStr;

use cyws::{ClassRecord, WeightSystem};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// `n_1 … n_l d` per line
    #[default]
    Text,
    /// One JSON object per line with all flags and counts
    Jsonl,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(CliError::Usage(format!("unknown format {other:?}"))),
        }
    }
}

pub fn format_record(rec: &ClassRecord, format: Format) -> String {
    match format {
        Format::Text => rec.weight_system.to_string(),
        Format::Jsonl => serde_json::to_string(rec).expect("records serialise"),
    }
}

pub fn write_records(out: &mut dyn Write, records: &[ClassRecord], format: Format) -> std::io::Result<()> {
    for r in records {
        writeln!(out, "{}", format_record(r, format))?;
    }
    out.flush()
}

/// Parses one line in either format. Text lines become IP records without
/// flags.
pub fn parse_record(line: &str) -> Result<ClassRecord, CliError> {
    let line = line.trim();
    if line.starts_with('{') {
        serde_json::from_str(line).map_err(|e| CliError::Usage(format!("bad record {line:?}: {e}")))
    } else {
        let ws: WeightSystem = line.parse()?;
        Ok(ClassRecord::new(ws, true))
    }
}

/// All records of a file, skipping blank lines and `#` comments.
pub fn read_records(input: &mut dyn BufRead) -> Result<Vec<ClassRecord>, CliError> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_record(t)?);
    }
    Ok(out)
}
