use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::BigComplex;

use super::VerificationReport;

pub const COLUMNS: [&str; 9] = ["id", "params", "lhs", "rhs", "abs_err", "rel_err", "passed", "digits", "wall_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidSpec(format!("unknown export format `{other}`"))),
        }
    }
}

/// One exported report; every number is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportRow {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub passed: bool,
    pub digits: String,
    pub wall_ms: String,
}

/// Decimal string with every digit the precision carries; reads back as
/// the same value.
pub fn full_decimal(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, None)
}

/// `re`, or `re+imi` / `re-imi` when the imaginary part is nonzero.
pub fn complex_decimal(z: &BigComplex) -> String {
    if z.im.is_zero() {
        return full_decimal(&z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", full_decimal(&z.re), full_decimal(&z.im.clone().abs()))
}

/// Parameter values at the report's digits with trailing zeros removed,
/// positional unless the magnitude is extreme.
pub fn param_decimal(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    // value = 0.ddd… × 10^exp
    let (negative, mantissa, exp) = x.to_sign_string_exp(10, Some(digits as usize));
    let mantissa = mantissa.trim_end_matches('0');
    let exp = exp.expect("finite nonzero value");
    let sign = if negative { "-" } else { "" };
    let len = mantissa.len() as i32;
    if exp <= -6 || exp > 21 {
        let (head, tail) = mantissa.split_at(1);
        let dot = if tail.is_empty() { "" } else { "." };
        return format!("{sign}{head}{dot}{tail}e{}", exp - 1);
    }
    if exp <= 0 {
        format!("{sign}0.{}{mantissa}", "0".repeat((-exp) as usize))
    } else if exp >= len {
        format!("{sign}{mantissa}{}", "0".repeat((exp - len) as usize))
    } else {
        let (int, frac) = mantissa.split_at(exp as usize);
        format!("{sign}{int}.{frac}")
    }
}

impl From<&VerificationReport> for ExportRow {
    fn from(r: &VerificationReport) -> Self {
        Self {
            id: r.id.to_string(),
            params: r.params.iter().map(|(n, v)| (n.clone(), param_decimal(v, r.digits_used))).collect(),
            lhs: complex_decimal(&r.lhs_value),
            rhs: complex_decimal(&r.rhs_value),
            abs_err: full_decimal(&r.abs_err),
            rel_err: full_decimal(&r.rel_err),
            passed: r.passed,
            digits: r.digits_used.to_string(),
            wall_ms: format!("{:.3}", r.wall_time.as_secs_f64() * 1e3),
        }
    }
}

impl ExportRow {
    /// `name=value` pairs joined by `;`.
    pub fn params_field(&self) -> String {
        self.params.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(";")
    }
}

/// Serializes reports as a JSON array or as CSV with a header row and LF
/// line endings.
pub fn export(reports: &[VerificationReport], format: Format) -> Result<Vec<u8>> {
    if reports.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rows: Vec<ExportRow> = reports.iter().map(ExportRow::from).collect();
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&rows).map_err(|e| Error::InvalidSpec(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvalidSpec(e.to_string());
            writer.write_record(COLUMNS).map_err(io)?;
            for row in &rows {
                let passed = row.passed.to_string();
                let params = row.params_field();
                let fields = [
                    &row.id, &params, &row.lhs, &row.rhs, &row.abs_err, &row.rel_err, &passed, &row.digits, &row.wall_ms,
                ];
                writer.write_record(fields).map_err(io)?;
            }
            writer.into_inner().map_err(|e| Error::InvalidSpec(e.to_string()))
        }
    }
}

/// Reads back a JSON export.
pub fn parse_json(bytes: &[u8]) -> Result<Vec<ExportRow>> {
    serde_json::from_slice(bytes).map_err(|e| Error::InvalidSpec(e.to_string()))
}

/// One human-readable line per report.
pub struct Summary<'a>(pub &'a VerificationReport);

impl fmt::Display for Summary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        let row = ExportRow::from(r);
        let params = if row.params.is_empty() { String::new() } else { format!(" [{}]", row.params_field()) };
        let digits = r.digits_used as usize;
        write!(
            f,
            "{} {}{params}\n  lhs     {}\n  rhs     {}\n  abs_err {:.3e}  rel_err {:.3e}  {:.1} ms",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            format!("{:.*}", digits, r.lhs_value),
            format!("{:.*}", digits, r.rhs_value),
            r.abs_err.to_f64(),
            r.rel_err.to_f64(),
            r.wall_time.as_secs_f64() * 1e3,
        )
    }
}
