//! Lindley information of discrete experiments.
//!
//! An experiment is a prior p(θ) over finitely many parameter values and a
//! conditional law p(x|θ) over finitely many outcomes. Terms of the form
//! 0·log 0 are taken to be zero.

use alloc::vec::Vec;

// unused when std is linked and its inherent float methods take over
#[allow(unused_imports)]
use num_traits::Float;

use crate::bases::OrthonormalBasis;
use crate::error::{Error, Result};
use crate::operators::{expectation, HermitianOperator};

pub const PROBABILITY_TOL: f64 = 1e-12;
/// Column-sum tolerance for experiments assembled from measurement designs.
pub const DESIGN_COLUMN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    /// Bits.
    #[default]
    Two,
    /// Nats.
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    /// x·log x with 0·log 0 = 0.
    fn xlogx(self, x: f64) -> f64 {
        if x == 0.0 {
            0.0
        } else {
            x * self.log(x)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteExperiment {
    prior: Vec<f64>,
    /// Rows are outcomes x, columns parameter values θ.
    conditional: Vec<Vec<f64>>,
}

impl DiscreteExperiment {
    pub fn new(prior: Vec<f64>, conditional: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tolerance(prior, conditional, PROBABILITY_TOL)
    }

    fn with_tolerance(prior: Vec<f64>, conditional: Vec<Vec<f64>>, column_tol: f64) -> Result<Self> {
        if prior.is_empty() || conditional.is_empty() {
            return Err(Error::InvalidExperiment("empty prior or outcome set"));
        }
        if prior.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidExperiment("prior has a negative or non-finite entry"));
        }
        if (prior.iter().sum::<f64>() - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidExperiment("prior does not sum to 1"));
        }
        let m = prior.len();
        if conditional.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidExperiment("conditional rows must have one entry per parameter value"));
        }
        if conditional.iter().flatten().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidExperiment("conditional has a negative or non-finite entry"));
        }
        for theta in 0..m {
            let col: f64 = conditional.iter().map(|row| row[theta]).sum();
            if (col - 1.0).abs() > column_tol {
                return Err(Error::InvalidExperiment("conditional column does not sum to 1"));
            }
        }
        Ok(Self { prior, conditional })
    }

    pub fn prior(&self) -> &[f64] {
        &self.prior
    }

    pub fn conditional(&self) -> &[Vec<f64>] {
        &self.conditional
    }

    pub fn num_outcomes(&self) -> usize {
        self.conditional.len()
    }

    pub fn num_parameters(&self) -> usize {
        self.prior.len()
    }
}

/// p(x) = Σ_θ p(θ) p(x|θ).
pub fn marginal(e: &DiscreteExperiment) -> Vec<f64> {
    e.conditional
        .iter()
        .map(|row| row.iter().zip(&e.prior).map(|(c, p)| c * p).sum())
        .collect()
}

/// Posterior entropy gain after observing outcome `x`:
/// Σ_θ p(θ|x) log p(θ|x) - Σ_θ p(θ) log p(θ). May be negative.
pub fn pointwise_info(e: &DiscreteExperiment, x: usize, base: LogBase) -> Result<f64> {
    let row = e
        .conditional
        .get(x)
        .ok_or(Error::OutOfRange { index: x, len: e.conditional.len() })?;
    let px: f64 = row.iter().zip(&e.prior).map(|(c, p)| c * p).sum();
    if px <= 0.0 {
        return Err(Error::ZeroProbabilityOutcome(x));
    }
    let posterior: f64 = row
        .iter()
        .zip(&e.prior)
        .map(|(c, p)| base.xlogx(c * p / px))
        .sum();
    let prior: f64 = e.prior.iter().map(|&p| base.xlogx(p)).sum();
    Ok(posterior - prior)
}

/// Average information Σ_θ Σ_x p(θ)p(x|θ) log p(x|θ) - Σ_x p(x) log p(x).
pub fn average_info(e: &DiscreteExperiment, base: LogBase) -> f64 {
    let mut joint_term = 0.0;
    for row in &e.conditional {
        for (c, p) in row.iter().zip(&e.prior) {
            if *c > 0.0 && *p > 0.0 {
                joint_term += p * c * base.log(*c);
            }
        }
    }
    let marginal_term: f64 = marginal(e).into_iter().map(|px| base.xlogx(px)).sum();
    joint_term - marginal_term
}

/// Experiment whose parameter is which of `states` was prepared and whose
/// outcome is the pair (basis k, vector i), each basis chosen with equal
/// weight. Outcome rows are ordered k-major.
pub fn design_experiment(
    bases: &[OrthonormalBasis],
    states: &[HermitianOperator],
    prior: Vec<f64>,
) -> Result<DiscreteExperiment> {
    let n = bases
        .first()
        .ok_or(Error::InvalidExperiment("no measurement bases"))?
        .dim();
    if let Some(b) = bases.iter().find(|b| b.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
    }
    if states.len() != prior.len() {
        return Err(Error::InvalidExperiment("one prior weight per state required"));
    }
    for s in states {
        if s.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: s.dim() });
        }
        s.validate_density()?;
    }
    let weight = 1.0 / bases.len() as f64;
    let conditional = bases
        .iter()
        .flat_map(|b| b.vectors().iter())
        .map(|v| {
            states
                .iter()
                .map(|rho| expectation(rho.matrix(), v).clamp(0.0, 1.0) * weight)
                .collect()
        })
        .collect();
    DiscreteExperiment::with_tolerance(prior, conditional, DESIGN_COLUMN_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{mub_prime, standard_basis};
    use crate::operators::projector;
    use crate::linalg::ComplexVector;
    use alloc::vec;

    fn m1() -> DiscreteExperiment {
        DiscreteExperiment::new(vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    fn m2() -> DiscreteExperiment {
        DiscreteExperiment::new(vec![0.5, 0.5], vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap()
    }

    #[test]
    fn qubit_examples() {
        assert_eq!(pointwise_info(&m1(), 0, LogBase::Two).unwrap(), 1.0);
        assert_eq!(pointwise_info(&m1(), 1, LogBase::Two).unwrap(), 1.0);
        assert_eq!(average_info(&m1(), LogBase::Two), 1.0);
        assert_eq!(pointwise_info(&m2(), 0, LogBase::Two).unwrap(), 0.0);
        assert_eq!(average_info(&m2(), LogBase::Two), 0.0);
        assert!((average_info(&m1(), LogBase::E) - core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn marginal_examples() {
        let e = DiscreteExperiment::new(vec![0.5, 0.5], vec![vec![1.0, 0.5], vec![0.0, 0.5]]).unwrap();
        assert_eq!(marginal(&e), vec![0.75, 0.25]);
        assert_eq!(marginal(&m1()), vec![0.5, 0.5]);
        let same = DiscreteExperiment::new(vec![0.2, 0.8], vec![vec![0.3, 0.3], vec![0.7, 0.7]]).unwrap();
        let m = marginal(&same);
        assert!((m[0] - 0.3).abs() < 1e-15 && (m[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn degenerate_prior_gives_nothing() {
        let e = DiscreteExperiment::new(vec![1.0, 0.0], vec![vec![0.9, 0.2], vec![0.1, 0.8]]).unwrap();
        assert_eq!(pointwise_info(&e, 0, LogBase::Two).unwrap(), 0.0);
        assert_eq!(pointwise_info(&e, 1, LogBase::Two).unwrap(), 0.0);
        assert_eq!(average_info(&e, LogBase::Two), 0.0);
    }

    #[test]
    fn zero_marginal_outcome_rejected() {
        let e = DiscreteExperiment::new(vec![1.0, 0.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(pointwise_info(&e, 1, LogBase::Two), Err(Error::ZeroProbabilityOutcome(1)));
        assert!(matches!(pointwise_info(&e, 2, LogBase::Two), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn validation() {
        assert!(DiscreteExperiment::new(vec![0.5, 0.6], vec![vec![1.0, 1.0]]).is_err());
        assert!(DiscreteExperiment::new(vec![0.5, 0.5], vec![vec![1.0, 0.9]]).is_err());
        assert!(DiscreteExperiment::new(vec![0.5, 0.5], vec![vec![1.0]]).is_err());
        assert!(DiscreteExperiment::new(vec![1.5, -0.5], vec![vec![1.0, 1.0]]).is_err());
    }

    #[test]
    fn design_bridge_reproduces_qubit_examples() {
        let zero = projector(&ComplexVector::basis(2, 0)).unwrap();
        let one = projector(&ComplexVector::basis(2, 1)).unwrap();
        let states = [zero, one];
        let e1 = design_experiment(&[standard_basis(2).unwrap()], &states, vec![0.5, 0.5]).unwrap();
        assert_eq!(e1, m1());
        let x = mub_prime(2).unwrap().bases()[1].clone();
        let e2 = design_experiment(&[x], &states, vec![0.5, 0.5]).unwrap();
        for row in e2.conditional() {
            for &p in row {
                assert!((p - 0.5).abs() < 1e-15);
            }
        }
        assert!(average_info(&e2, LogBase::Two).abs() < 1e-12);
    }

    #[test]
    fn indistinguishable_states() {
        let d = mub_prime(3).unwrap();
        let mixed = HermitianOperator::maximally_mixed(3);
        let e = design_experiment(d.bases(), &[mixed.clone(), mixed.clone(), mixed], vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(e.num_outcomes(), 12);
        assert!(average_info(&e, LogBase::Two).abs() < 1e-12);
    }
}
