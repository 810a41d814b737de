//! JSON file formats and the fixed-precision writer shared by every command.
//!
//! Floats are written with 17 significant digits so that output is
//! byte-identical across runs and round-trips exactly. Non-finite values are
//! written as `null`.

use std::io;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use tomoinfo_core::linalg::{ComplexMatrix, ComplexVector};
use tomoinfo_core::{MeasurementDesign, OrthonormalBasis, TransitionTable};

use crate::error::CliError;

struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", fmt_f64(value))
    }
}

/// 17 significant digits in scientific notation; -0 is written as 0.
pub fn fmt_f64(value: f64) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.16e}")
}

/// Serializes with [`fmt_f64`] floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser).expect("in-memory serialization");
    let mut out = String::from_utf8(buf).expect("serde_json writes UTF-8");
    out.push('\n');
    out
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed {}: {e}", path.display())))
}

/// `{"n": int, "bases": [basis][vector][component] = [re, im]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub n: usize,
    pub bases: Vec<Vec<Vec<[f64; 2]>>>,
}

impl DesignFile {
    pub fn from_design(design: &MeasurementDesign) -> Self {
        Self {
            n: design.dim(),
            bases: design
                .bases()
                .iter()
                .map(|b| b.vectors().iter().map(|v| v.entries().iter().map(|z| [z.re, z.im]).collect()).collect())
                .collect(),
        }
    }

    pub fn to_design(&self) -> Result<MeasurementDesign, CliError> {
        let mut bases = Vec::with_capacity(self.bases.len());
        for (k, basis) in self.bases.iter().enumerate() {
            let mut vectors = Vec::with_capacity(basis.len());
            for v in basis {
                if v.len() != self.n {
                    return Err(CliError::Input(format!(
                        "basis {} has a vector of length {}, expected {}",
                        k + 1,
                        v.len(),
                        self.n
                    )));
                }
                vectors.push(ComplexVector::new(v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())?);
            }
            if vectors.len() != self.n {
                return Err(CliError::Input(format!(
                    "basis {} has {} vectors, expected {}",
                    k + 1,
                    vectors.len(),
                    self.n
                )));
            }
            bases.push(OrthonormalBasis::new(vectors, format!("basis-{}", k + 1))?);
        }
        Ok(MeasurementDesign::new(bases)?)
    }
}

/// `{"n": int, "table": [k][l][i][j], "synthetic": bool}`; `synthetic` defaults to false.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub n: usize,
    pub table: Vec<Vec<Vec<Vec<f64>>>>,
    #[serde(default)]
    pub synthetic: bool,
}

impl TableFile {
    pub fn from_table(table: &TransitionTable) -> Self {
        Self { n: table.dim(), table: table.to_nested(), synthetic: table.is_synthetic() }
    }

    pub fn to_table(&self) -> Result<TransitionTable, CliError> {
        Ok(TransitionTable::from_nested(self.n, &self.table, self.synthetic)?)
    }
}

/// Input to `analyze`: a design or a transition table.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AnalyzeInput {
    Design(DesignFile),
    Table(TableFile),
}

/// `{"probabilities": [basis][outcome]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbabilitiesFile {
    pub probabilities: Vec<Vec<f64>>,
}

/// `{"prior": [...], "conditional": [[...], ...]}`, rows are outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub prior: Vec<f64>,
    pub conditional: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub n: usize,
    pub rho: Vec<Vec<[f64; 2]>>,
    pub residual: f64,
}

pub fn matrix_entries(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.dim())
        .map(|r| (0..m.dim()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}
