//! Tabular experiment output: CSV rows under a `#`-prefixed metadata header.
//!
//! Identical inputs must produce byte-identical files, so floats are printed
//! with a fixed 17-significant-digit scientific format, metadata is emitted
//! in insertion order, and nothing time- or path-dependent is written.

use std::io::Write;

use dtqw::Error;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Float(f) => Some(*f),
            Value::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(f) => format_float(*f),
            Value::Text(s) => s.clone(),
        }
    }
}

/// 17 significant digits, scientific.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub struct Report {
    meta: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        let meta = vec![
            ("command".to_string(), command.to_string()),
            ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ];
        Self {
            meta,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn add_meta(&mut self, key: &str, value: impl std::fmt::Display) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn add_meta_float(&mut self, key: &str, value: f64) {
        self.meta.push((key.to_string(), format_float(value)));
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    /// Append a row; every numeric entry must be finite.
    pub fn push_row(&mut self, row: Vec<Value>) -> CliResult<()> {
        assert_eq!(row.len(), self.columns.len(), "row arity mismatch");
        for (value, column) in row.iter().zip(&self.columns) {
            if let Value::Float(f) = value {
                if !f.is_finite() {
                    return Err(CliError::Guard(Error::NonFinite { column: column.clone() }));
                }
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for value in row {
                if !first {
                    w.write_all(b",")?;
                }
                w.write_all(value.render().as_bytes())?;
                first = false;
            }
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("in-memory write cannot fail");
        buf
    }
}

/// Write to a file path, or to stdout for `-`.
pub fn write_out(report: &Report, out: &str) -> CliResult<()> {
    if out == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        report.write_to(&mut lock)?;
        lock.flush()?;
    } else {
        let file = std::fs::File::create(out)?;
        let mut w = std::io::BufWriter::new(file);
        report.write_to(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_identical_output() {
        let build = || {
            let mut r = Report::new("demo", &["a", "b"]);
            r.add_meta("mass", 1.0);
            r.push_row(vec![Value::Int(1), Value::Float(0.1)]).unwrap();
            r.push_row(vec![Value::Int(2), Value::Float(-3.0e-7)]).unwrap();
            r.to_bytes()
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn float_format_has_17_significant_digits() {
        assert_eq!(format_float(1.0 / 3.0), "3.3333333333333331e-1");
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn non_finite_rows_are_rejected() {
        let mut r = Report::new("demo", &["x"]);
        let err = r.push_row(vec![Value::Float(f64::NAN)]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(r.rows().is_empty());
    }
}
