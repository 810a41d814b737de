//! Linear-inversion state reconstruction from per-basis outcome probabilities.
//!
//! Writing ρ - I/n = Σ y_i^k T_i^k, the probabilities satisfy
//! p_j^l - 1/n = Σ_{k,i} t^{kl}_{ij} y_i^k, a square system in Γ.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bases::MeasurementDesign;
use crate::error::{Error, Result};
use crate::gram::{design_gram, det_gamma0, DropIndex};
use crate::linalg::{ComplexMatrix, Lu};
use crate::operators::{expectation, projector, HermitianOperator};
use crate::report::SINGULAR_VD_TOL;

/// Per-basis probabilities must each sum to one within this.
pub const PROBABILITY_SUM_TOL: f64 = 1e-9;

/// Outcome probabilities `[basis][outcome]` of state `rho` in every basis of the design.
pub fn forward_probabilities(rho: &HermitianOperator, design: &MeasurementDesign) -> Result<Vec<Vec<f64>>> {
    if rho.dim() != design.dim() {
        return Err(Error::DimensionMismatch { expected: design.dim(), found: rho.dim() });
    }
    rho.validate_density()?;
    Ok(design
        .bases()
        .iter()
        .map(|b| b.vectors().iter().map(|v| expectation(rho.matrix(), v).clamp(0.0, 1.0)).collect())
        .collect())
}

fn validate_probabilities(probabilities: &[Vec<f64>], n: usize) -> Result<()> {
    if probabilities.len() != n + 1 {
        return Err(Error::InconsistentProbabilities("need one distribution per basis"));
    }
    for dist in probabilities {
        if dist.len() != n {
            return Err(Error::InconsistentProbabilities("need n outcomes per basis"));
        }
        if dist.iter().any(|p| !p.is_finite() || *p < -PROBABILITY_SUM_TOL) {
            return Err(Error::InconsistentProbabilities("negative or non-finite probability"));
        }
        if (dist.iter().sum::<f64>() - 1.0).abs() > PROBABILITY_SUM_TOL {
            return Err(Error::InconsistentProbabilities("basis probabilities do not sum to 1"));
        }
    }
    Ok(())
}

/// Recovers the unique trace-one Hermitian operator with the given outcome
/// probabilities. Fails on incomplete designs.
pub fn reconstruct_state(probabilities: &[Vec<f64>], design: &MeasurementDesign) -> Result<HermitianOperator> {
    let n = design.dim();
    validate_probabilities(probabilities, n)?;
    let drop = DropIndex::last(n);
    let gram = design_gram(design, drop)?;
    let vd = gram.determinant() / det_gamma0(n);
    if vd.is_nan() || vd <= SINGULAR_VD_TOL {
        return Err(Error::Singular);
    }
    let kept = drop.kept(n);
    let inv_n = 1.0 / n as f64;
    let rhs: Vec<f64> = probabilities
        .iter()
        .flat_map(|dist| kept.iter().map(move |&j| dist[j] - inv_n))
        .collect();
    let coords = Lu::new(gram.matrix())?.solve(&rhs)?;

    let mut rho = ComplexMatrix::identity(n).scale(Complex64::new(inv_n, 0.0));
    let shift = ComplexMatrix::identity(n).scale(Complex64::new(inv_n, 0.0));
    let mut idx = 0;
    for basis in design.bases() {
        for &i in &kept {
            let t = projector(&basis.vectors()[i])?.matrix().sub(&shift);
            rho = rho.add(&t.scale(Complex64::new(coords[idx], 0.0)));
            idx += 1;
        }
    }
    // restore exact hermiticity lost to rounding
    let herm = ComplexMatrix::from_fn(n, |r, c| (rho[(r, c)] + rho[(c, r)].conj()) * 0.5);
    HermitianOperator::new(herm)
}

/// Largest |p - p'| between `probabilities` and those of `rho`, without
/// requiring `rho` to be positive.
pub fn round_trip_residual(
    rho: &HermitianOperator,
    design: &MeasurementDesign,
    probabilities: &[Vec<f64>],
) -> f64 {
    let mut worst = 0.0f64;
    for (basis, dist) in design.bases().iter().zip(probabilities) {
        for (v, p) in basis.vectors().iter().zip(dist) {
            worst = worst.max((expectation(rho.matrix(), v) - p).abs());
        }
    }
    worst
}

/// Random full-rank density matrix G G† / tr(G G†) with G complex Gaussian.
pub fn random_density_matrix_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermitianOperator {
    let g = ComplexMatrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    let rho = ComplexMatrix::from_fn(n, |r, c| (w[(r, c)] + w[(c, r)].conj()) * (0.5 / tr));
    HermitianOperator::new_unchecked(rho)
}

pub fn random_density_matrix(n: usize, seed: u64) -> HermitianOperator {
    random_density_matrix_with(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{haar_random_design, mub_prime};
    use crate::linalg::ComplexVector;
    use alloc::vec;

    #[test]
    fn uniform_probabilities_give_maximally_mixed() {
        for n in [2, 3, 5] {
            let d = mub_prime(n).unwrap();
            let probs = vec![vec![1.0 / n as f64; n]; n + 1];
            let rho = reconstruct_state(&probs, &d).unwrap();
            assert!(rho.matrix().max_abs_diff(HermitianOperator::maximally_mixed(n).matrix()) < 1e-12);
        }
    }

    #[test]
    fn qubit_pure_zero() {
        let d = mub_prime(2).unwrap();
        let zero = projector(&ComplexVector::basis(2, 0)).unwrap();
        let probs = forward_probabilities(&zero, &d).unwrap();
        let rho = reconstruct_state(&probs, &d).unwrap();
        assert!(rho.matrix().max_abs_diff(zero.matrix()) < 1e-9);
    }

    #[test]
    fn random_states_round_trip() {
        for (n, seed) in [(2, 1), (3, 2), (4, 3)] {
            let d = haar_random_design(n, seed).unwrap();
            for s in 0..10 {
                let rho = random_density_matrix(n, 100 + s);
                rho.validate_density().unwrap();
                let probs = forward_probabilities(&rho, &d).unwrap();
                let back = reconstruct_state(&probs, &d).unwrap();
                assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-9);
                assert!(round_trip_residual(&back, &d, &probs) < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = mub_prime(2).unwrap();
        let probs = vec![vec![0.6, 0.6], vec![0.5, 0.5], vec![0.5, 0.5]];
        assert!(matches!(reconstruct_state(&probs, &d), Err(Error::InconsistentProbabilities(_))));
        assert!(matches!(
            reconstruct_state(&[vec![0.5, 0.5]], &d),
            Err(Error::InconsistentProbabilities(_))
        ));
    }

    #[test]
    fn rejects_incomplete_design() {
        // three copies of the computational basis span only the diagonal
        let b = crate::bases::standard_basis(2).unwrap();
        let d = MeasurementDesign::new(vec![b.clone(), b.clone(), b]).unwrap();
        let probs = vec![vec![0.5, 0.5]; 3];
        assert_eq!(reconstruct_state(&probs, &d), Err(Error::Singular));
    }
}
