//! Tables and reports, written as CSV or JSON.

use std::io::Write;

use serde::Serialize;

use crate::config::Format;
use crate::CliError;

/// Formats `x` with 15 significant digits, fixed notation for moderate
/// exponents and scientific otherwise, trailing zeros trimmed.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("exponent");
    if (-5..15).contains(&exponent) {
        let decimals = (14 - exponent).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exponent}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(usize),
    Real(f64),
}

impl Cell {
    fn render(&self) -> String {
        match *self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format_number(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render))?;
                }
                w.flush()?;
            }
            Format::Json => write_json(out, self)?,
        }
        Ok(())
    }
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// One named verification check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(id: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }

    /// Passes when `value > threshold`.
    pub fn above(id: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            id: id.into(),
            value,
            tolerance: threshold,
            passed: value > threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub overall: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Self {
            overall: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<(), CliError> {
        match format {
            Format::Json => write_json(out, self),
            Format::Csv => {
                let mut w = csv_writer(out);
                w.write_record(["id", "value", "tolerance", "passed"])?;
                for c in &self.checks {
                    w.write_record([
                        c.id.clone(),
                        format_number(c.value),
                        format_number(c.tolerance),
                        c.passed.to_string(),
                    ])?;
                }
                w.flush()?;
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(64.0 / 9.0), "7.11111111111111");
        assert_eq!(format_number(7.68), "7.68");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-2.0), "-2");
        assert_eq!(format_number(1.25e-9), "1.25e-9");
        assert_eq!(format_number(123456.0), "123456");
        assert_eq!(format_number(6.02214076e23), "6.02214076e23");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333333");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["n", "x"]);
        t.push(vec![Cell::Int(0), Cell::Real(0.5)]);
        t.push(vec![Cell::Int(1), Cell::Real(1.0 / 3.0)]);
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Csv).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,x\n0,0.5\n1,0.333333333333333\n");
    }

    #[test]
    fn report_overall_is_conjunction() {
        let r = VerificationReport::new(vec![Check::at_most("b", 1.0, 2.0), Check::above("a", 1.0, 2.0)]);
        assert!(!r.overall);
        assert_eq!(r.checks[0].id, "a");
        assert!(VerificationReport::new(vec![Check::at_most("x", 0.0, 0.0)]).overall);
    }
}
