//! JSON matrix files: `{"rows": r, "cols": c, "data": [[[re, im], …], …]}`,
//! row-major. Doubles are written in shortest round-trip form, so
//! `emit_matrix(parse_matrix(f))` reproduces every bit of the entries.

use std::path::Path;

use leafkit_core::{ComplexMatrix, LeafError, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let data = (0..m.rows()).map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
        Self { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("matrix files serialize")
    }
}

pub fn parse_matrix_str(text: &str, path: &Path) -> Result<ComplexMatrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let shape = |message: String| CliError::Shape { path: path.to_path_buf(), message };
    if file.rows == 0 || file.cols == 0 {
        return Err(shape(format!("declared shape {}x{} is empty", file.rows, file.cols)));
    }
    if file.data.len() != file.rows {
        return Err(shape(format!("`data` has {} rows, `rows` is {}", file.data.len(), file.rows)));
    }
    if let Some((r, row)) = file.data.iter().enumerate().find(|(_, row)| row.len() != file.cols) {
        return Err(shape(format!("`data[{r}]` has {} entries, `cols` is {}", row.len(), file.cols)));
    }
    let entries: Vec<C64> = file.data.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
    ComplexMatrix::new(file.rows, file.cols, entries).map_err(|e| match e {
        LeafError::NonFinite { row, col } => CliError::Parse {
            path: path.to_path_buf(),
            location: format!("data[{row}][{col}]"),
            message: "entry is not finite".into(),
        },
        other => shape(other.to_string()),
    })
}

pub fn parse_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_matrix_str(&text, path)
}

/// Matrix file text, one matrix row per line.
pub fn emit_matrix(m: &ComplexMatrix) -> String {
    let file = MatrixFile::from_matrix(m);
    let rows: Vec<String> =
        file.data.iter().map(|row| format!("  {}", serde_json::to_string(row).expect("finite entries"))).collect();
    format!("{{\"rows\":{},\"cols\":{},\"data\":[\n{}\n]}}\n", file.rows, file.cols, rows.join(",\n"))
}

/// Column or row matrix as a vector.
pub fn as_vector(m: &ComplexMatrix, path: &Path) -> Result<Vec<C64>, CliError> {
    if m.cols() == 1 || m.rows() == 1 {
        Ok(m.data().to_vec())
    } else {
        Err(CliError::Shape {
            path: path.to_path_buf(),
            message: format!("expected a vector, found a {}x{} matrix", m.rows(), m.cols()),
        })
    }
}
