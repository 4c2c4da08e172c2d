//! CSV, JSON and aligned-text renderings of result rows.

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use serde::ser::Serializer;
use serde::Serialize;
use std::io::Write;

/// A numeric result, a named sentinel (e.g. `no_bound_state`) or nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    Sentinel(&'static str),
    Empty,
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            _ => None,
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Value(v) => format!("{v:.6}"),
            Cell::Sentinel(s) => s.to_string(),
            Cell::Empty => "-".to_string(),
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Value)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Value(v) => s.serialize_f64(*v),
            Cell::Sentinel(t) => s.serialize_str(t),
            Cell::Empty => s.serialize_none(),
        }
    }
}

/// Map the "no level here" errors to sentinels; pass the rest through.
pub fn cell_or_sentinel(r: afm_core::Result<f64>) -> Result<Cell, afm_core::Error> {
    use afm_core::Error;
    match r {
        Ok(v) => Ok(Cell::Value(v)),
        Err(Error::NoBoundState | Error::NoSpectrum) => Ok(Cell::Sentinel("no_bound_state")),
        Err(Error::CriticalExceeded) => Ok(Cell::Sentinel("critical_exceeded")),
        Err(Error::Unbound) => Ok(Cell::Sentinel("unbound")),
        Err(e) => Err(e),
    }
}

/// Row of the level schema `case,n,l,oracle,afm_std,afm_improved,rel_err_std,rel_err_improved`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelRow {
    pub case: String,
    pub n: u32,
    pub l: u32,
    pub oracle: Cell,
    pub afm_std: Cell,
    pub afm_improved: Cell,
    pub rel_err_std: Cell,
    pub rel_err_improved: Cell,
}

impl LevelRow {
    pub fn new(case: &str, n: u32, l: u32, oracle: Cell, afm_std: Cell, afm_improved: Cell) -> Self {
        let rel = |a: Cell| match (a, oracle) {
            (Cell::Value(a), Cell::Value(o)) => Cell::Value((a - o) / o),
            _ => Cell::Empty,
        };
        LevelRow {
            case: case.to_string(),
            n,
            l,
            oracle,
            afm_std,
            afm_improved,
            rel_err_std: rel(afm_std),
            rel_err_improved: rel(afm_improved),
        }
    }
}

/// Column names and text cells for the aligned rendering.
pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
}

impl Tabular for LevelRow {
    fn header() -> Vec<&'static str> {
        vec!["case", "n", "l", "oracle", "afm_std", "afm_improved", "rel_err_std", "rel_err_improved"]
    }

    fn cells(&self) -> Vec<String> {
        let pct = |c: &Cell| match c {
            Cell::Value(v) => format!("{:+.4}%", 100.0 * v),
            other => other.pretty(),
        };
        vec![
            self.case.clone(),
            self.n.to_string(),
            self.l.to_string(),
            self.oracle.pretty(),
            self.afm_std.pretty(),
            self.afm_improved.pretty(),
            pct(&self.rel_err_std),
            pct(&self.rel_err_improved),
        ]
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a std::collections::BTreeMap<String, String>,
    rows: &'a [T],
    summary: &'a serde_json::Value,
}

/// Render `rows` plus a summary object. CSV carries rows only; the aligned
/// text form appends the summary as `key: value` lines.
pub fn render<T: Serialize + Tabular>(
    format: Format,
    command: &str,
    config: &RunConfig,
    rows: &[T],
    summary: &serde_json::Value,
) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if rows.is_empty() {
                w.write_record(T::header())?;
            }
            for r in rows {
                w.serialize(r)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let env = Envelope {
                tool: "afm",
                version: env!("CARGO_PKG_VERSION"),
                command,
                config: config.values(),
                rows,
                summary,
            };
            let mut out = serde_json::to_vec_pretty(&env)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Pretty => {
            let mut out = Vec::new();
            write_aligned(&mut out, &T::header(), rows.iter().map(Tabular::cells))?;
            write_summary(&mut out, summary, "")?;
            Ok(out)
        }
    }
}

fn write_aligned(out: &mut Vec<u8>, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> std::io::Result<()> {
    let rows: Vec<Vec<String>> = rows.collect();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.iter().map(|s| s.to_string()).collect()))?;
    for r in rows {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}

fn write_summary(out: &mut Vec<u8>, v: &serde_json::Value, prefix: &str) -> std::io::Result<()> {
    match v {
        serde_json::Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                write_summary(out, x, &key)?;
            }
            Ok(())
        }
        serde_json::Value::Null => Ok(()),
        other => writeln!(out, "{prefix}: {other}"),
    }
}

/// Write to `path` if given, else stdout.
pub fn emit(bytes: &[u8], path: Option<&str>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}
