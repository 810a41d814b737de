//! Volume-based information measure of a design and its bounds.
//!
//! The information content is ½·ln det Γ (nats). It is bounded above by
//! ½·ln det Γ₀, attained exactly by unbiased bases, and below by a
//! perturbation estimate driven by the largest probability spread ε:
//!
//! ```text
//! det Γ / det Γ₀ ≥ exp(-(n²-n)²(n²-1) ε² / (1 + λ_m))
//! ```
//!
//! where λ_m is the smallest eigenvalue of Γ₀^{-1/2}ΓΓ₀^{-1/2} - I.

use alloc::vec;
use alloc::vec::Vec;

// unused when std is linked and its inherent float methods take over
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gram::{det_gamma0, gram_matrix_dropping, reduced_matrix, reduced_matrix_dropping, DropIndex};
use crate::linalg::sym_eigen;
use crate::table::{two_value_admissible, two_value_table, TransitionTable};

/// det Γ / det Γ₀ at or below this is treated as an incomplete design.
pub const SINGULAR_VD_TOL: f64 = 1e-10;
/// Determinants smaller in magnitude than this are reported as exactly 0.
pub const DET_UNDERFLOW: f64 = 1e-300;
/// The lower bound needs 1 + λ_m above this.
pub const BOUND_DENOMINATOR_TOL: f64 = 1e-14;
/// Slack when comparing vd against the lower bound.
pub const BOUND_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct InfoReport {
    pub n: usize,
    pub det_gamma: f64,
    pub det_gamma0: f64,
    /// det Γ / det Γ₀.
    pub vd: f64,
    /// ½·ln det Γ; -inf when singular.
    pub info_nats: f64,
    /// -½·ln vd; +inf when singular.
    pub info_loss_nats: f64,
    pub epsilon: f64,
    pub lambda_min: f64,
    pub spec_radius: f64,
    /// None when 1 + λ_m is not positive.
    pub lower_bound: Option<f64>,
    pub bound_holds: Option<bool>,
    pub singular: bool,
}

/// The lower estimate exp(-(n²-n)²(n²-1)ε²/(1+λ_m)), if defined.
pub fn perturbation_lower_bound(n: usize, epsilon: f64, lambda_min: f64) -> Option<f64> {
    let denom = 1.0 + lambda_min;
    if denom <= BOUND_DENOMINATOR_TOL {
        return None;
    }
    let nf = n as f64;
    let off = nf * nf - nf;
    Some((-(off * off) * (nf * nf - 1.0) * epsilon * epsilon / denom).exp())
}

pub fn info_report(table: &TransitionTable) -> Result<InfoReport> {
    info_report_dropping(table, DropIndex::last(table.dim()))
}

pub fn info_report_dropping(table: &TransitionTable, drop: DropIndex) -> Result<InfoReport> {
    let n = table.dim();
    let gram = gram_matrix_dropping(table, drop);
    let mut det_gamma = gram.determinant();
    if det_gamma.abs() < DET_UNDERFLOW {
        det_gamma = 0.0;
    }
    let det_gamma0 = det_gamma0(n);
    let vd = det_gamma / det_gamma0;
    let singular = vd.is_nan() || vd <= SINGULAR_VD_TOL;
    let (info_nats, info_loss_nats) = if singular {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        (0.5 * det_gamma.ln(), -0.5 * vd.ln())
    };

    let reduced = reduced_matrix_dropping(table, drop);
    let eig = sym_eigen(&reduced.symmetrized)?;
    let lambda_min = eig.min() - 1.0;
    let spec_radius = (eig.min() - 1.0).abs().max((eig.max() - 1.0).abs());
    let epsilon = table.max_spread();
    let lower_bound = perturbation_lower_bound(n, epsilon, lambda_min);
    let bound_holds = lower_bound.map(|lb| vd >= lb - BOUND_SLACK);

    Ok(InfoReport {
        n,
        det_gamma,
        det_gamma0,
        vd,
        info_nats,
        info_loss_nats,
        epsilon,
        lambda_min,
        spec_radius,
        lower_bound,
        bound_holds,
        singular,
    })
}

/// Closed-form spectrum of the reduced matrix of the two-value table.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoValueSpectrum {
    /// (eigenvalue, multiplicity): 1 + nc with multiplicity n² - n, then 1 - n²c with n - 1.
    pub eigenvalues: Vec<(f64, usize)>,
    /// (1+nc)^{n²-n} (1-n²c)^{n-1}
    pub closed_det: f64,
}

impl TwoValueSpectrum {
    /// All eigenvalues with repetition, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .eigenvalues
            .iter()
            .flat_map(|&(v, m)| core::iter::repeat_n(v, m))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

pub fn two_value_spectrum(n: usize, c: f64) -> Result<TwoValueSpectrum> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if !two_value_admissible(n, c) {
        return Err(Error::InadmissibleParameter { n, c });
    }
    let nf = n as f64;
    let big = 1.0 + nf * c;
    let small = 1.0 - nf * nf * c;
    let mult_big = n * n - n;
    let mult_small = n - 1;
    Ok(TwoValueSpectrum {
        eigenvalues: vec![(big, mult_big), (small, mult_small)],
        closed_det: big.powi(mult_big as i32) * small.powi(mult_small as i32),
    })
}

/// Closed form next to the numerics of the assembled reduced matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCheck {
    pub spectrum: TwoValueSpectrum,
    pub numeric_eigenvalues: Vec<f64>,
    pub numeric_det: f64,
    pub max_eig_error: f64,
}

pub fn check_two_value_spectrum(n: usize, c: f64) -> Result<SpectrumCheck> {
    let spectrum = two_value_spectrum(n, c)?;
    let reduced = reduced_matrix(&two_value_table(n, c)?);
    let numeric = sym_eigen(&reduced.symmetrized)?;
    let max_eig_error = spectrum
        .expanded()
        .iter()
        .zip(&numeric.values)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(SpectrumCheck {
        numeric_det: reduced.determinant(),
        numeric_eigenvalues: numeric.values,
        max_eig_error,
        spectrum,
    })
}
