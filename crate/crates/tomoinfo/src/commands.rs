//! One function per subcommand. Each returns a serializable value; writing
//! and exit codes are left to the binary.

use serde::{Deserialize, Serialize};

use tomoinfo_core::gram::DropIndex;
use tomoinfo_core::optimize::max_info;
use tomoinfo_core::report::{check_two_value_spectrum, info_report_dropping};
use tomoinfo_core::tomography::round_trip_residual;
use tomoinfo_core::{
    average_info, mub_prime, optimize_design, pointwise_info, reconstruct_state, transition_table,
    two_value_table, DiscreteExperiment, Error, InfoReport, LogBase, MeasurementDesign,
};

use crate::error::CliError;
use crate::formats::{matrix_entries, AnalyzeInput, DensityFile, DesignFile, ExperimentFile};

pub fn check_dimension(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Input(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

pub struct MubOutput {
    pub design: DesignFile,
    /// max |s^{kl}_{ij} - 1/n| over distinct bases.
    pub deviation: f64,
}

pub fn mub(n: usize) -> Result<MubOutput, CliError> {
    check_dimension(n)?;
    let design = mub_prime(n)?;
    Ok(MubOutput { deviation: design.unbiasedness_defect(), design: DesignFile::from_design(&design) })
}

/// Report keys as written to JSON. Infinite information values become null.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportJson {
    pub n: usize,
    pub det_gamma: f64,
    pub det_gamma0: f64,
    pub vd: f64,
    pub info_nats: Option<f64>,
    pub info_loss_nats: Option<f64>,
    pub epsilon: f64,
    pub lambda_min: f64,
    pub spec_radius: f64,
    pub lower_bound: Option<f64>,
    pub bound_holds: Option<bool>,
    pub singular: bool,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl From<&InfoReport> for ReportJson {
    fn from(r: &InfoReport) -> Self {
        Self {
            n: r.n,
            det_gamma: r.det_gamma,
            det_gamma0: r.det_gamma0,
            vd: r.vd,
            info_nats: finite(r.info_nats),
            info_loss_nats: finite(r.info_loss_nats),
            epsilon: r.epsilon,
            lambda_min: r.lambda_min,
            spec_radius: r.spec_radius,
            lower_bound: r.lower_bound,
            bound_holds: r.bound_holds,
            singular: r.singular,
        }
    }
}

pub enum AnalyzeSource {
    File(AnalyzeInput),
    /// Synthetic two-value table; `None` selects c = 1/n².
    TwoValue { n: usize, c: Option<f64> },
}

/// `drop_index` is 1-based; defaults to n.
pub fn analyze(source: AnalyzeSource, drop_index: Option<usize>) -> Result<InfoReport, CliError> {
    let table = match source {
        AnalyzeSource::File(AnalyzeInput::Design(d)) => transition_table(&d.to_design()?)?,
        AnalyzeSource::File(AnalyzeInput::Table(t)) => t.to_table()?,
        AnalyzeSource::TwoValue { n, c } => {
            check_dimension(n)?;
            two_value_table(n, c.unwrap_or(1.0 / (n * n) as f64))?
        }
    };
    let n = table.dim();
    let drop = match drop_index {
        None => DropIndex::last(n),
        Some(0) => return Err(CliError::Input("--drop-index is 1-based".into())),
        Some(d) => DropIndex::new(n, d - 1)?,
    };
    Ok(info_report_dropping(&table, drop)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedFormJson {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub closed_det: f64,
    pub numeric_det: f64,
    pub max_eig_error: f64,
}

pub fn closed_form(n: usize, c: f64) -> Result<ClosedFormJson, CliError> {
    check_dimension(n)?;
    let check = check_two_value_spectrum(n, c)?;
    Ok(ClosedFormJson {
        eigenvalues: check.spectrum.eigenvalues.iter().map(|e| e.0).collect(),
        multiplicities: check.spectrum.eigenvalues.iter().map(|e| e.1).collect(),
        closed_det: check.spectrum.closed_det,
        numeric_det: check.numeric_det,
        max_eig_error: check.max_eig_error,
    })
}

pub fn reconstruct(design: &MeasurementDesign, probabilities: &[Vec<f64>]) -> Result<DensityFile, CliError> {
    let rho = reconstruct_state(probabilities, design)?;
    Ok(DensityFile {
        n: rho.dim(),
        residual: round_trip_residual(&rho, design, probabilities),
        rho: matrix_entries(rho.matrix()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LindleyJson {
    /// Per outcome; null for outcomes of zero marginal probability.
    pub pointwise: Vec<Option<f64>>,
    pub average: f64,
}

pub fn parse_log_base(s: &str) -> Result<LogBase, CliError> {
    match s {
        "2" => Ok(LogBase::Two),
        "e" => Ok(LogBase::E),
        other => Err(CliError::Input(format!("--log-base must be 2 or e, got {other}"))),
    }
}

pub fn lindley(file: ExperimentFile, base: LogBase) -> Result<LindleyJson, CliError> {
    let e = DiscreteExperiment::new(file.prior, file.conditional)?;
    let pointwise = (0..e.num_outcomes())
        .map(|x| match pointwise_info(&e, x, base) {
            Ok(v) => Ok(Some(v)),
            Err(Error::ZeroProbabilityOutcome(_)) => Ok(None),
            Err(other) => Err(other),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LindleyJson { pointwise, average: average_info(&e, base) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OptimizeJson {
    pub n: usize,
    pub initial_info: f64,
    pub final_info: f64,
    pub max_info: f64,
    pub accepted: usize,
    pub final_step: f64,
    pub trace: Vec<f64>,
    pub design: DesignFile,
}

pub fn optimize(start: &MeasurementDesign, steps: usize, step_size: f64, seed: u64) -> Result<OptimizeJson, CliError> {
    if !(step_size > 0.0 && step_size.is_finite()) {
        return Err(CliError::Input(format!("--step-size must be positive, got {step_size}")));
    }
    let out = optimize_design(start, steps, step_size, seed)?;
    Ok(OptimizeJson {
        n: start.dim(),
        initial_info: out.trace[0],
        final_info: out.final_info(),
        max_info: max_info(start.dim()),
        accepted: out.accepted,
        final_step: out.final_step,
        design: DesignFile::from_design(&out.design),
        trace: out.trace,
    })
}
