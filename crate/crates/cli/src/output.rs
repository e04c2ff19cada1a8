//! Rendering reports as JSON, CSV or plain text.

use std::fmt::Write as _;

use clap::ValueEnum;
use invlat::LatticeVector;
use serde::Serialize;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// `(1,2)` as `1 2`, for CSV cells.
pub fn vec_cell(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn uvec_cell(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Rows joined by `;`.
pub fn vectors_cell(vs: &[LatticeVector]) -> String {
    vs.iter().map(|v| vec_cell(v.coords())).collect::<Vec<_>>().join(";")
}

pub fn matrix_cell(rows: &[Vec<u64>]) -> String {
    rows.iter().map(|r| uvec_cell(r)).collect::<Vec<_>>().join(";")
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn csv<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::internal(e.to_string()))
}

/// Fixed-width text table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(|s| s.as_str()).collect(), &mut out);
    }
    out
}
