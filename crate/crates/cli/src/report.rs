//! Machine-readable command reports. Keys are emitted in lexicographic
//! order at every level.

use leafkit_core::{ComplexMatrix, C64};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::matrix_file::MatrixFile;

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    /// `sha256:<hex>` over the arguments and input file contents.
    pub inputs: String,
    pub results: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), inputs: String::new(), results: Map::new(), tolerances: Map::new(), pass: true }
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), serde_json::to_value(value).expect("report values serialize"));
        self
    }

    pub fn matrix(&mut self, key: &str, m: &ComplexMatrix) -> &mut Self {
        self.results.insert(key.into(), MatrixFile::from_matrix(m).to_value());
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.tolerances.insert(key.into(), json!(value));
        self
    }

    /// Records a named contract and folds it into `pass`.
    pub fn contract(&mut self, key: &str, holds: bool) -> &mut Self {
        self.pass &= holds;
        self.result(key, holds)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "tolerances": self.tolerances,
            "pass": self.pass,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn complex(z: C64) -> [f64; 2] {
    [z.re, z.im]
}
