//! Metric and transform files.
//!
//! A metric file is `{"n": 2, "entries": [["2", "i"], ["-i", 1]]}`; a
//! transform file is either a bare `n×n` array or the same object shape.
//! Entries are integers or scalar strings such as `"1/2+3/4 i"`.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metric::{HermitianMetric, Matrix};
use crate::obstruction::RealOrthogonalMatrix;
use crate::scalar::{GaussianRational, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn scalar(&self) -> Result<GaussianRational> {
        match self {
            Entry::Int(v) => Ok(GaussianRational::from(*v)),
            Entry::Text(s) => s.parse(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixObject {
    n: usize,
    entries: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Object(MatrixObject),
    Bare(Vec<Vec<Entry>>),
}

fn to_matrix(rows: &[Vec<Entry>]) -> Result<Matrix> {
    rows.iter()
        .map(|r| r.iter().map(Entry::scalar).collect())
        .collect()
}

fn check_declared(n: usize, rows: usize) -> Result<()> {
    if n != rows {
        return Err(Error::InvalidFile(format!(
            "declared n = {n} but found {rows} rows"
        )));
    }
    Ok(())
}

/// Parses metric JSON. Non-Hermitian, singular and indefinite matrices are
/// rejected.
pub fn parse_metric(src: &str) -> Result<HermitianMetric> {
    let obj: MatrixObject = serde_json::from_str(src).map_err(|e| Error::InvalidFile(e.to_string()))?;
    check_declared(obj.n, obj.entries.len())?;
    let metric = HermitianMetric::new(to_matrix(&obj.entries)?)?;
    let v = metric.validate();
    if !v.positive_definite {
        return Err(Error::InvalidFile(format!(
            "metric is not positive definite; leading minors: {}",
            v.leading_minors.join(", ")
        )));
    }
    Ok(metric)
}

/// Parses transform JSON and checks `A^T A = I` exactly.
pub fn parse_transform(src: &str) -> Result<RealOrthogonalMatrix> {
    let file: MatrixFile = serde_json::from_str(src).map_err(|e| Error::InvalidFile(e.to_string()))?;
    let rows = match file {
        MatrixFile::Object(obj) => {
            check_declared(obj.n, obj.entries.len())?;
            obj.entries
        }
        MatrixFile::Bare(rows) => rows,
    };
    let mut entries: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
    for row in to_matrix(&rows)? {
        let mut out = Vec::with_capacity(row.len());
        for v in row {
            if !v.is_real() {
                return Err(Error::InvalidFile(format!("transform entry {v} is not real")));
            }
            out.push(v.re().clone());
        }
        entries.push(out);
    }
    RealOrthogonalMatrix::new(entries)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidFile(format!("{}: {e}", path.display())))
}

pub fn load_metric(path: &Path) -> Result<HermitianMetric> {
    parse_metric(&read(path)?)
}

pub fn load_transform(path: &Path) -> Result<RealOrthogonalMatrix> {
    parse_transform(&read(path)?)
}
