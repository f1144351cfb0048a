use std::io::{BufRead, Write};

use super::config::OutputFormat;
use super::sweep::SpectrumTable;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "axis,omega,observable,re,im";

/// One row of the long-form table. Missing values are failed points.
#[derive(Debug, Clone, PartialEq)]
pub struct LongRow {
    pub axis: f64,
    pub omega: Option<f64>,
    pub observable: String,
    pub re: Option<f64>,
    pub im: Option<f64>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

impl SpectrumTable {
    /// Rows in export order: every observable over (axis, omega), then poles.
    pub fn long_rows(&self) -> Vec<LongRow> {
        let mut rows = Vec::new();
        let no = self.omega.len();
        for grid in &self.observables {
            for (i, &a) in self.axis.iter().enumerate() {
                for (j, &w) in self.omega.iter().enumerate() {
                    let k = i * no + j;
                    rows.push(LongRow {
                        axis: a,
                        omega: Some(w),
                        observable: grid.name.clone(),
                        re: grid.re[k],
                        im: grid.im[k],
                    });
                }
            }
        }
        if let Some(poles) = &self.poles {
            for (&a, list) in self.axis.iter().zip(poles) {
                match list {
                    Some(list) => rows.extend(list.iter().map(|&p| LongRow {
                        axis: a,
                        omega: Some(p),
                        observable: "pole".into(),
                        re: Some(p),
                        im: Some(0.0),
                    })),
                    None => rows.push(LongRow { axis: a, omega: None, observable: "pole".into(), re: None, im: None }),
                }
            }
        }
        rows
    }
}

pub fn write_csv<W: Write>(table: &SpectrumTable, mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in table.long_rows() {
        writeln!(out, "{},{},{},{},{}", num(r.axis), opt(r.omega), r.observable, opt(r.re), opt(r.im))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: BufRead>(input: R) -> Result<Vec<LongRow>> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h == CSV_HEADER => {}
        _ => return Err(Error::Export("missing CSV header".into())),
    }
    let parse = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|_| Error::Export(format!("bad number {s:?}")))
        }
    };
    let mut rows = Vec::new();
    for line in lines {
        let line = line?;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(Error::Export(format!("expected 5 fields in {line:?}")));
        }
        rows.push(LongRow {
            axis: parse(f[0])?.ok_or_else(|| Error::Export("missing axis value".into()))?,
            omega: parse(f[1])?,
            observable: f[2].to_string(),
            re: parse(f[3])?,
            im: parse(f[4])?,
        });
    }
    Ok(rows)
}

/// JSON document carrying the grid, values, poles and run metadata.
pub fn write_structured<W: Write>(table: &SpectrumTable, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, table).map_err(|e| Error::Export(e.to_string()))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn read_structured<R: std::io::Read>(input: R) -> Result<SpectrumTable> {
    serde_json::from_reader(input).map_err(|e| Error::Export(e.to_string()))
}

pub fn write_table<W: Write>(table: &SpectrumTable, format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(table, out),
        OutputFormat::Structured => write_structured(table, out),
    }
}
