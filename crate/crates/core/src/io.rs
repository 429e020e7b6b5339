//! CSV plumbing shared by the trace and table writers.
//!
//! Doubles are written with 17 significant digits in scientific notation
//! (`{:.16e}`), which round-trips every finite `f64` bit-exactly and does
//! not depend on locale. Missing optional values are empty cells.

use std::io::{Read, Write};

use crate::error::{Error, Result};

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_opt_float(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub(crate) fn write_table<W: Write>(
    writer: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(header)?;
    for row in rows {
        csv.write_record(&row)?;
    }
    csv.flush()?;
    Ok(())
}

/// Column lookup for one parsed CSV table.
pub(crate) struct Table {
    header: Vec<String>,
    records: Vec<csv::StringRecord>,
}

impl Table {
    pub(crate) fn read<R: Read>(reader: R, required: &[&str]) -> Result<Self> {
        let mut csv = csv::Reader::from_reader(reader);
        let header: Vec<String> = csv.headers()?.iter().map(str::to_owned).collect();
        for col in required {
            if !header.iter().any(|h| h == col) {
                return Err(Error::Schema(format!("missing column `{col}`")));
            }
        }
        let records = csv.records().collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Table { header, records })
    }

    pub(crate) fn has_column(&self, col: &str) -> bool {
        self.header.iter().any(|h| h == col)
    }

    pub(crate) fn rows(&self) -> impl Iterator<Item = TableRow<'_>> {
        self.records.iter().enumerate().map(move |(i, r)| TableRow {
            table: self,
            record: r,
            line: i + 2,
        })
    }
}

pub(crate) struct TableRow<'a> {
    table: &'a Table,
    record: &'a csv::StringRecord,
    line: usize,
}

impl TableRow<'_> {
    fn cell(&self, col: &str) -> Result<Option<&str>> {
        let Some(idx) = self.table.header.iter().position(|h| h == col) else {
            return Ok(None);
        };
        match self.record.get(idx) {
            Some(v) => Ok(Some(v)),
            None => Err(Error::Schema(format!(
                "line {}: missing cell for `{col}`",
                self.line
            ))),
        }
    }

    pub(crate) fn opt_f64(&self, col: &str) -> Result<Option<f64>> {
        match self.cell(col)? {
            None | Some("") => Ok(None),
            Some(v) => v.trim().parse().map(Some).map_err(|_| {
                Error::Schema(format!("line {}: `{col}` = {v:?} is not a number", self.line))
            }),
        }
    }

    pub(crate) fn f64(&self, col: &str) -> Result<f64> {
        self.opt_f64(col)?.ok_or_else(|| {
            Error::Schema(format!("line {}: `{col}` is empty", self.line))
        })
    }

    pub(crate) fn parse<T: std::str::FromStr>(&self, col: &str) -> Result<T> {
        let v = self
            .cell(col)?
            .ok_or_else(|| Error::Schema(format!("missing column `{col}`")))?;
        v.trim().parse().map_err(|_| {
            Error::Schema(format!("line {}: cannot parse `{col}` = {v:?}", self.line))
        })
    }

    pub(crate) fn flag(&self, col: &str) -> Result<bool> {
        match self.cell(col)? {
            Some("true") => Ok(true),
            Some("false") | None | Some("") => Ok(false),
            Some(v) => Err(Error::Schema(format!(
                "line {}: `{col}` = {v:?} is not a boolean",
                self.line
            ))),
        }
    }
}
