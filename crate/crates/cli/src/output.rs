//! CSV and JSON writers. CSV carries the rows only, with a header line named
//! after the row fields; JSON carries the configuration as well and follows
//! `schema/results.schema.json`.

use std::io::Write;

use serde::Serialize;

use crate::config::OutputFormat;
use crate::error::Result;
use crate::experiments::{Report, Rows};

pub fn write_report(report: &Report, format: OutputFormat, out: impl Write) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(&report.rows, out),
        OutputFormat::Json => write_json(report, out),
    }
}

pub fn write_json(report: &Report, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_csv(rows: &Rows, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match rows {
        Rows::RandomSmall(r) => serialize_all(&mut w, r)?,
        Rows::FuncSmall(r) => serialize_all(&mut w, r)?,
        Rows::FuncBig(r) => serialize_all(&mut w, r)?,
        Rows::KdepHist(r) => serialize_all(&mut w, r)?,
    }
    w.flush()?;
    Ok(())
}

fn serialize_all<W: Write, T: Serialize>(w: &mut csv::Writer<W>, rows: &[T]) -> Result<()> {
    for row in rows {
        w.serialize(row)?;
    }
    Ok(())
}
