//! JSON and CSV rendering.

use heatcoef::numerics::round_sig;
use heatcoef::Scalar;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Tabular view of a report, used for `--format csv`.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub json: Value,
    pub table: Table,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::engine("Output", e))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.headers).map_err(|e| CliError::engine("Output", e))?;
                for r in &self.table.rows {
                    w.write_record(r).map_err(|e| CliError::engine("Output", e))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::engine("Output", e))?;
                String::from_utf8(bytes).map_err(|e| CliError::engine("Output", e))
            }
        }
    }
}

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round_sig(x))
    } else {
        Value::String(x.to_string())
    }
}

pub fn num_str(x: f64) -> String {
    if x.is_finite() {
        round_sig(x).to_string()
    } else {
        x.to_string()
    }
}

pub fn scalar_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

/// `{display, pi_power_terms}`.
pub fn exact(s: &Scalar) -> Value {
    let terms = s.to_json().get("pi_power_terms").cloned().unwrap_or(Value::Null);
    json!({ "display": s.to_string(), "pi_power_terms": terms })
}

/// `{display, pi_power_terms, float}` for fields of structured reports.
pub fn scalar(s: &Scalar) -> Value {
    let mut v = exact(s);
    v["float"] = num(scalar_f64(s));
    v
}

pub fn coefficient(index: usize, value: &Scalar, provenance: &str, formula: &str) -> Value {
    json!({
        "index": index,
        "exact": exact(value),
        "float": num(scalar_f64(value)),
        "provenance": provenance,
        "formula": formula,
    })
}

pub fn fitted(index: usize, value: f64, stderr: f64, formula: &str) -> Value {
    json!({
        "index": index,
        "float": num(value),
        "stderr": num(stderr),
        "provenance": "fitted",
        "formula": formula,
    })
}

pub fn coefficient_table() -> Table {
    Table::new(&["index", "exact", "float", "provenance", "formula"])
}

pub fn coefficient_row(index: usize, value: &Scalar, provenance: &str, formula: &str) -> Vec<String> {
    vec![
        index.to_string(),
        value.to_string(),
        num_str(scalar_f64(value)),
        provenance.into(),
        formula.into(),
    ]
}
