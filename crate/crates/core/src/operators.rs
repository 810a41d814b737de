//! Hermitian operators as a real inner-product space: the Hilbert-Schmidt
//! product, rank-one projectors and Born-rule outcome probabilities.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix, ComplexVector};
use crate::{NORMALIZATION_TOL, SYMMETRY_TOL};

/// Most negative eigenvalue still accepted in a density matrix.
pub const DENSITY_EIGEN_TOL: f64 = 1e-10;

/// A square complex matrix equal to its conjugate transpose (entrywise 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m.hermitian_defect();
        if defect > SYMMETRY_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self(m))
    }

    /// Wraps without checking; callers guarantee hermiticity by construction.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    /// I/n.
    pub fn maximally_mixed(n: usize) -> Self {
        Self(ComplexMatrix::identity(n).scale(Complex64::new(1.0 / n as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Checks trace one and no eigenvalue below -1e-10.
    pub fn validate_density(&self) -> Result<()> {
        let tr = self.0.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::NotDensityMatrix("trace differs from 1"));
        }
        let eig = hermitian_eigen(&self.0)?;
        if eig.values[0] < -DENSITY_EIGEN_TOL {
            return Err(Error::NotDensityMatrix("negative eigenvalue"));
        }
        Ok(())
    }
}

/// tr(A† B). Real up to rounding for Hermitian arguments.
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            acc += a.0[(r, c)].conj() * b.0[(r, c)];
        }
    }
    Ok(acc.re)
}

/// |v⟩⟨v| for a unit vector.
pub fn projector(v: &ComplexVector) -> Result<HermitianOperator> {
    let norm = v.norm_sqr();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(HermitianOperator(ComplexMatrix::outer(v, v)))
}

/// tr(P ρ), clamped into [0, 1]. `rho` must be a density matrix.
pub fn outcome_probability(rho: &HermitianOperator, p: &HermitianOperator) -> Result<f64> {
    rho.validate_density()?;
    Ok(hs_inner(p, rho)?.clamp(0.0, 1.0))
}

/// ⟨v|ρ|v⟩ without validating ρ; used on hot paths after a single validation.
pub(crate) fn expectation(rho: &ComplexMatrix, v: &ComplexVector) -> f64 {
    v.inner(&rho.mul_vec(v)).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket(entries: &[(f64, f64)]) -> ComplexVector {
        ComplexVector::new(entries.iter().map(|&(re, im)| c(re, im)).collect()).unwrap()
    }

    #[test]
    fn identity_inner_product() {
        let id = HermitianOperator::new(ComplexMatrix::identity(2)).unwrap();
        assert_eq!(hs_inner(&id, &id).unwrap(), 2.0);
    }

    #[test]
    fn projector_examples() {
        let p0 = projector(&ket(&[(1.0, 0.0), (0.0, 0.0)])).unwrap();
        assert_eq!(p0.matrix()[(0, 0)], c(1.0, 0.0));
        assert_eq!(p0.matrix()[(1, 1)], c(0.0, 0.0));

        let plus = projector(&ket(&[(FRAC_1_SQRT_2, 0.0), (FRAC_1_SQRT_2, 0.0)])).unwrap();
        for r in 0..2 {
            for col in 0..2 {
                assert!((plus.matrix()[(r, col)] - c(0.5, 0.0)).norm() < 1e-15);
            }
        }

        let yplus = projector(&ket(&[(FRAC_1_SQRT_2, 0.0), (0.0, FRAC_1_SQRT_2)])).unwrap();
        let want = [[c(0.5, 0.0), c(0.0, -0.5)], [c(0.0, 0.5), c(0.5, 0.0)]];
        for r in 0..2 {
            for col in 0..2 {
                assert!((yplus.matrix()[(r, col)] - want[r][col]).norm() < 1e-15);
            }
        }
        assert!((hs_inner(&yplus, &yplus).unwrap() - 1.0).abs() < 1e-15);
        let sq = yplus.matrix() * yplus.matrix();
        assert!(sq.max_abs_diff(yplus.matrix()) < 1e-15);
    }

    #[test]
    fn projector_rejects_unnormalized() {
        assert!(matches!(projector(&ket(&[(1.0, 0.0), (1.0, 0.0)])), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn born_rule_examples() {
        let zero = ket(&[(1.0, 0.0), (0.0, 0.0)]);
        let plus = ket(&[(FRAC_1_SQRT_2, 0.0), (FRAC_1_SQRT_2, 0.0)]);
        let rho0 = projector(&zero).unwrap();
        let p0 = projector(&zero).unwrap();
        let pplus = projector(&plus).unwrap();
        assert!((outcome_probability(&rho0, &p0).unwrap() - 1.0).abs() < 1e-15);
        assert!((outcome_probability(&rho0, &pplus).unwrap() - 0.5).abs() < 1e-15);
        for n in 2..6 {
            let mixed = HermitianOperator::maximally_mixed(n);
            let p = projector(&ComplexVector::basis(n, n - 1)).unwrap();
            assert!((outcome_probability(&mixed, &p).unwrap() - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_density() {
        let twice = HermitianOperator::new(ComplexMatrix::identity(2)).unwrap();
        let p = projector(&ComplexVector::basis(2, 0)).unwrap();
        assert!(matches!(outcome_probability(&twice, &p), Err(Error::NotDensityMatrix(_))));
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = c(1.5, 0.0);
        m[(1, 1)] = c(-0.5, 0.0);
        let neg = HermitianOperator::new(m).unwrap();
        assert!(matches!(outcome_probability(&neg, &p), Err(Error::NotDensityMatrix(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let a = HermitianOperator::maximally_mixed(2);
        let b = HermitianOperator::maximally_mixed(3);
        assert_eq!(hs_inner(&a, &b), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }
}
