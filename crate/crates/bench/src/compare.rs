//! Plot-ready comparison tables: energy errors against FCI, runtimes and
//! parameter counts, one row per bond length and one column per ansatz.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use vqe_core::CHEMICAL_ACCURACY;

use crate::record::{BenchRecord, CCSD_KEY};
use crate::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonKind {
    Errors,
    Runtimes,
    Params,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for ComparisonKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "errors" => Ok(ComparisonKind::Errors),
            "runtimes" => Ok(ComparisonKind::Runtimes),
            "params" => Ok(ComparisonKind::Params),
            _ => Err(BenchError::Usage(format!("unknown comparison `{s}` (errors, runtimes, params)"))),
        }
    }
}

impl fmt::Display for ComparisonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComparisonKind::Errors => "errors",
            ComparisonKind::Runtimes => "runtimes",
            ComparisonKind::Params => "params",
        })
    }
}

impl FromStr for Format {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(BenchError::Usage(format!("unknown format `{s}` (csv, json)"))),
        }
    }
}

/// Lower and upper edges of the chemical-accuracy band on energy errors.
pub const BAND_COLUMNS: [&str; 2] = ["chem_acc_lower", "chem_acc_upper"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub kind: String,
    pub molecule: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// Builds the table; columns are `bond_length`, the ansatz names in sorted
/// order, then (errors only) `CCSD` if present and the band edges.
pub fn comparison_table(record: &BenchRecord, kind: ComparisonKind) -> Result<Table, BenchError> {
    let names: Vec<&String> = match kind {
        ComparisonKind::Errors => record.energies.keys().collect(),
        ComparisonKind::Runtimes => record.runtimes.keys().collect(),
        ComparisonKind::Params => record.n_params.keys().collect(),
    };
    if kind == ComparisonKind::Errors && record.fci.iter().any(Option::is_none) {
        return Err(BenchError::MissingFci(record.molecule.clone()));
    }
    let mut columns = vec!["bond_length".to_string()];
    columns.extend(names.iter().map(|n| n.to_string()));
    let with_ccsd = kind == ComparisonKind::Errors && record.ccsd.is_some();
    if with_ccsd {
        columns.push(CCSD_KEY.to_string());
    }
    if kind == ComparisonKind::Errors {
        columns.extend(BAND_COLUMNS.iter().map(|c| c.to_string()));
    }
    let mut rows = Vec::with_capacity(record.bond_lengths.len());
    for (i, &b) in record.bond_lengths.iter().enumerate() {
        let mut row = vec![Some(b)];
        for n in &names {
            row.push(match kind {
                ComparisonKind::Errors => {
                    let fci = record.fci[i].expect("checked above");
                    record.energies[*n][i].map(|e| e - fci)
                }
                ComparisonKind::Runtimes => record.runtimes[*n][i],
                ComparisonKind::Params => record.n_params[*n][i].map(|k| k as f64),
            });
        }
        if with_ccsd {
            let fci = record.fci[i].expect("checked above");
            row.push(record.ccsd.as_ref().and_then(|v| v[i]).map(|e| e - fci));
        }
        if kind == ComparisonKind::Errors {
            row.push(Some(-CHEMICAL_ACCURACY));
            row.push(Some(CHEMICAL_ACCURACY));
        }
        rows.push(row);
    }
    Ok(Table {
        kind: kind.to_string(),
        molecule: record.molecule.clone(),
        columns,
        rows,
    })
}

/// Shortest round-trip text, the same spelling the JSON output uses.
fn format_cell(v: f64) -> String {
    serde_json::to_string(&v).expect("finite values always serialize")
}

/// RFC 4180 text with a header row; null cells are empty.
pub fn table_to_csv(t: &Table) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.columns).map_err(|e| BenchError::Usage(e.to_string()))?;
    for row in &t.rows {
        w.write_record(row.iter().map(|c| c.map(format_cell).unwrap_or_default()))
            .map_err(|e| BenchError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn table_to_json(t: &Table) -> String {
    let value = serde_json::to_value(t).expect("table is always serializable");
    let mut s = serde_json::to_string_pretty(&value).expect("value is always serializable");
    s.push('\n');
    s
}

pub fn emit_comparison(record: &BenchRecord, kind: ComparisonKind, format: Format) -> Result<String, BenchError> {
    let t = comparison_table(record, kind)?;
    match format {
        Format::Csv => table_to_csv(&t),
        Format::Json => Ok(table_to_json(&t)),
    }
}
