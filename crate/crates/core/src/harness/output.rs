use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of one named suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    /// The formula or identity the suite exercises.
    pub formula: String,
    pub tolerance: f64,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub max_error: f64,
    pub passed: bool,
    /// Free-form `key=value` observations, `;`-separated.
    pub detail: String,
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl SuiteResult {
    pub fn new(suite: &str, formula: &str, tolerance: f64) -> Self {
        Self {
            suite: suite.to_string(),
            formula: formula.to_string(),
            tolerance,
            cases_run: 0,
            cases_passed: 0,
            max_error: 0.0,
            passed: true,
            detail: String::new(),
            wall_clock: Duration::ZERO,
        }
    }

    /// Records one case with an error magnitude; `NaN` marks a failed evaluation.
    pub fn record(&mut self, error: f64, ok: bool) {
        self.cases_run += 1;
        let ok = ok && !error.is_nan();
        if ok {
            self.cases_passed += 1;
        } else {
            self.passed = false;
        }
        if error.is_nan() {
            self.max_error = f64::NAN;
        } else if !self.max_error.is_nan() {
            self.max_error = self.max_error.max(error);
        }
    }

    /// Records an error that passes when `error <= tolerance`.
    pub fn check(&mut self, error: f64) {
        self.record(error, error <= self.tolerance);
    }

    pub fn fail_case(&mut self, why: &str) {
        self.record(f64::NAN, false);
        self.note("failure", why);
    }

    pub fn note(&mut self, key: &str, value: impl std::fmt::Display) {
        if !self.detail.is_empty() {
            self.detail.push(';');
        }
        self.detail.push_str(&format!("{key}={value}"));
    }
}

/// A float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Writes CSV rows (header first) with LF line endings.
pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::Config(format!("csv encoding failed: {e}"));
    w.write_record(header).map_err(to_err)?;
    for row in rows {
        w.write_record(row).map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn suites_csv(results: &[SuiteResult]) -> Result<String> {
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|s| {
            vec![
                s.suite.clone(),
                s.formula.clone(),
                fmt_f64(s.tolerance),
                s.cases_run.to_string(),
                s.cases_passed.to_string(),
                fmt_f64(s.max_error),
                s.passed.to_string(),
                s.detail.clone(),
            ]
        })
        .collect();
    csv_string(
        &["suite", "formula", "tolerance", "cases_run", "cases_passed", "max_error", "passed", "detail"],
        &rows,
    )
}

pub fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Config(format!("json encoding failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path`, or stdout when `None`.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|source| Error::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}

/// One cell of a result table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => fmt_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Column-named rows, rendered as CSV or JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let header: Vec<&str> = self.columns.iter().map(String::as_str).collect();
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        csv_string(&header, &rows)
    }
}
