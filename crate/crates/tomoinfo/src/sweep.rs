//! Perturbation sweeps around exact unbiased bases, written as CSV.

use std::io::Write;

use rayon::prelude::*;

use tomoinfo_core::{info_report, mub_prime, perturb_design, transition_table};

use crate::error::CliError;
use crate::formats::fmt_f64;

pub const HEADER: [&str; 7] = ["eps", "seed", "epsilonMeasured", "vd", "infoLossNats", "lowerBound", "boundHolds"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub eps: f64,
    pub seed: u64,
    pub epsilon_measured: f64,
    pub vd: f64,
    pub info_loss_nats: f64,
    pub lower_bound: Option<f64>,
    pub bound_holds: Option<bool>,
}

impl SweepRow {
    fn record(&self) -> [String; 7] {
        let loss = if self.info_loss_nats.is_finite() { fmt_f64(self.info_loss_nats) } else { "inf".into() };
        [
            fmt_f64(self.eps),
            self.seed.to_string(),
            fmt_f64(self.epsilon_measured),
            fmt_f64(self.vd),
            loss,
            self.lower_bound.map(fmt_f64).unwrap_or_default(),
            self.bound_holds.map(|b| b.to_string()).unwrap_or_default(),
        ]
    }
}

/// One row per (eps, seed), computed in parallel and sorted by (eps, seed).
pub fn run_sweep(n: usize, eps: &[f64], seeds: &[u64]) -> Result<Vec<SweepRow>, CliError> {
    if let Some(bad) = eps.iter().find(|e| !(**e >= 0.0 && e.is_finite())) {
        return Err(CliError::Input(format!("--eps values must be finite and nonnegative, got {bad}")));
    }
    let mub = mub_prime(n)?;
    let pairs: Vec<(f64, u64)> = eps.iter().flat_map(|&e| seeds.iter().map(move |&s| (e, s))).collect();
    let mut rows = pairs
        .par_iter()
        .map(|&(e, seed)| {
            let design = perturb_design(&mub, e, seed)?;
            let r = info_report(&transition_table(&design)?)?;
            Ok(SweepRow {
                eps: e,
                seed,
                epsilon_measured: r.epsilon,
                vd: r.vd,
                info_loss_nats: r.info_loss_nats,
                lower_bound: r.lower_bound,
                bound_holds: r.bound_holds,
            })
        })
        .collect::<Result<Vec<_>, tomoinfo_core::Error>>()?;
    rows.sort_by(|a, b| a.eps.total_cmp(&b.eps).then(a.seed.cmp(&b.seed)));
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Input(e.to_string());
    w.write_record(HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.record()).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Median information loss per distinct eps, ascending in eps.
pub fn median_loss(rows: &[SweepRow]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let eps = rows[start].eps;
        let end = start + rows[start..].iter().take_while(|r| r.eps == eps).count();
        out.push((eps, median(rows[start..end].iter().map(|r| r.info_loss_nats).collect())));
        start = end;
    }
    out
}

pub fn is_monotone(medians: &[(f64, f64)]) -> bool {
    medians.windows(2).all(|w| w[1].1 >= w[0].1)
}
