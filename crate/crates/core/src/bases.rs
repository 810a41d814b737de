//! Orthonormal bases and complete measurement designs: the standard basis,
//! unbiased bases in prime dimension, Haar-random bases and small unitary
//! perturbations of existing bases.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
// unused when std is linked and its inherent float methods take over
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::complex::orthonormalize_columns;
use crate::linalg::{unitary_exp, ComplexMatrix, ComplexVector};
use crate::operators::{projector, HermitianOperator};
use crate::ORTHONORMAL_TOL;

/// n orthonormal vectors in C^n: one projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    vectors: Vec<ComplexVector>,
    label: String,
}

impl OrthonormalBasis {
    /// Validates that there are n vectors of dimension n with ⟨a_i|a_j⟩ = δ_ij within 1e-12.
    pub fn new(vectors: Vec<ComplexVector>, label: impl Into<String>) -> Result<Self> {
        let n = vectors.len();
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        let basis = Self { vectors, label: label.into() };
        let defect = basis.orthonormality_defect();
        if defect > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(defect));
        }
        Ok(basis)
    }

    /// Columns of a unitary matrix.
    fn from_unitary(u: &ComplexMatrix, label: impl Into<String>) -> Self {
        Self {
            vectors: (0..u.dim()).map(|c| u.column(c)).collect(),
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[ComplexVector] {
        &self.vectors
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Largest |⟨a_i|a_j⟩ - δ_ij|.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.inner(b) - target).norm());
            }
        }
        worst
    }

    pub fn projectors(&self) -> Vec<HermitianOperator> {
        self.vectors
            .iter()
            .map(|v| projector(v).expect("basis vectors are normalized"))
            .collect()
    }

    /// Matrix with the basis vectors as columns.
    pub fn as_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.vectors)
    }

    /// Applies a unitary to every vector.
    pub fn rotated(&self, u: &ComplexMatrix) -> Self {
        Self {
            vectors: self.vectors.iter().map(|v| u.mul_vec(v)).collect(),
            label: self.label.clone(),
        }
    }

    /// Re-orthonormalizes in place to remove accumulated rounding drift.
    pub(crate) fn reorthonormalize(&mut self) {
        if let Ok(q) = orthonormalize_columns(&self.as_matrix()) {
            self.vectors = (0..q.dim()).map(|c| q.column(c)).collect();
        }
    }
}

/// An ordered list of n + 1 orthonormal bases of C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementDesign {
    n: usize,
    bases: Vec<OrthonormalBasis>,
}

impl MeasurementDesign {
    pub fn new(bases: Vec<OrthonormalBasis>) -> Result<Self> {
        let n = bases.first().map_or(0, OrthonormalBasis::dim);
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if bases.len() != n + 1 {
            return Err(Error::BasisCount { expected: n + 1, found: bases.len() });
        }
        if let Some(b) = bases.iter().find(|b| b.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
        }
        Ok(Self { n, bases })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[OrthonormalBasis] {
        &self.bases
    }

    pub fn into_bases(self) -> Vec<OrthonormalBasis> {
        self.bases
    }

    pub(crate) fn bases_mut(&mut self) -> &mut [OrthonormalBasis] {
        &mut self.bases
    }

    /// Largest | |⟨a_i^k|a_j^l⟩|² - 1/n | over k != l.
    pub fn unbiasedness_defect(&self) -> f64 {
        let target = 1.0 / self.n as f64;
        let mut worst = 0.0f64;
        for (k, bk) in self.bases.iter().enumerate() {
            for bl in &self.bases[k + 1..] {
                for a in bk.vectors() {
                    for b in bl.vectors() {
                        worst = worst.max((a.transition(b) - target).abs());
                    }
                }
            }
        }
        worst
    }
}

/// e_1, ..., e_n.
pub fn standard_basis(n: usize) -> Result<OrthonormalBasis> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    Ok(OrthonormalBasis {
        vectors: (0..n).map(|k| ComplexVector::basis(n, k)).collect(),
        label: "computational".to_string(),
    })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn is_prime_power(n: usize) -> bool {
    let Some(p) = (2..=n).find(|d| n.is_multiple_of(*d)) else {
        return false;
    };
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// n + 1 mutually unbiased bases for prime n.
///
/// For n = 2 these are the eigenbases of the three Pauli operators. For odd
/// primes the standard basis is joined by the n bases with components
/// `exp(2πi(a m² + j m)/n)/√n`, a = 0..n, vector index j, component m.
pub fn mub_prime(n: usize) -> Result<MeasurementDesign> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if !is_prime(n) {
        return Err(if is_prime_power(n) { Error::PrimePower(n) } else { Error::Composite(n) });
    }
    let mut bases = Vec::with_capacity(n + 1);
    bases.push(standard_basis(n)?);
    if n == 2 {
        let h = FRAC_1_SQRT_2;
        let ket = |a: Complex64, b: Complex64| ComplexVector::new(alloc::vec![a, b]).expect("dimension 2");
        let one = Complex64::new(h, 0.0);
        bases.push(OrthonormalBasis {
            vectors: alloc::vec![ket(one, one), ket(one, -one)],
            label: "x".to_string(),
        });
        let i = Complex64::new(0.0, h);
        bases.push(OrthonormalBasis {
            vectors: alloc::vec![ket(one, i), ket(one, -i)],
            label: "y".to_string(),
        });
    } else {
        let amp = 1.0 / (n as f64).sqrt();
        for a in 0..n {
            let vectors = (0..n)
                .map(|j| {
                    let entries = (0..n)
                        .map(|m| {
                            // reduce the phase exactly before converting to an angle
                            let k = (a * m % n * m + j * m) % n;
                            Complex64::from_polar(amp, 2.0 * PI * k as f64 / n as f64)
                        })
                        .collect();
                    ComplexVector::new(entries).expect("n >= 3")
                })
                .collect();
            bases.push(OrthonormalBasis { vectors, label: alloc::format!("quadratic-{a}") });
        }
    }
    MeasurementDesign::new(bases)
}

fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

/// Haar-distributed basis drawn from `rng`.
pub fn haar_random_basis_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<OrthonormalBasis> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    loop {
        // Gram-Schmidt leaves R with a positive real diagonal, the phase
        // convention under which Q of a Ginibre matrix is Haar distributed.
        if let Ok(q) = orthonormalize_columns(&gaussian_matrix(rng, n)) {
            return Ok(OrthonormalBasis::from_unitary(&q, "haar"));
        }
    }
}

pub fn haar_random_basis(n: usize, seed: u64) -> Result<OrthonormalBasis> {
    haar_random_basis_with(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// n + 1 independent Haar bases.
pub fn haar_random_design(n: usize, seed: u64) -> Result<MeasurementDesign> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = (0..=n)
        .map(|_| haar_random_basis_with(&mut rng, n))
        .collect::<Result<Vec<_>>>()?;
    MeasurementDesign::new(bases)
}

/// Random Hermitian matrix (GUE shape) scaled to unit spectral radius.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<ComplexMatrix> {
    let g = gaussian_matrix(rng, n);
    let h = g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0));
    let radius = crate::linalg::hermitian_eigen(&h)?.spectral_radius();
    if radius == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }
    Ok(h.scale(Complex64::new(1.0 / radius, 0.0)))
}

/// Applies exp(i eps H) with H drawn from `rng`. H is drawn even when eps is
/// zero so a seed fixes the same direction at every magnitude.
pub fn perturb_basis_with<R: Rng + ?Sized>(
    rng: &mut R,
    basis: &OrthonormalBasis,
    eps: f64,
) -> Result<OrthonormalBasis> {
    let h = random_hermitian(rng, basis.dim())?;
    if eps == 0.0 {
        return Ok(basis.clone());
    }
    Ok(basis.rotated(&unitary_exp(&h, eps)?))
}

pub fn perturb_basis(basis: &OrthonormalBasis, eps: f64, seed: u64) -> Result<OrthonormalBasis> {
    perturb_basis_with(&mut ChaCha8Rng::seed_from_u64(seed), basis, eps)
}

/// Perturbs every basis of a design independently, drawing from one seeded stream.
pub fn perturb_design(design: &MeasurementDesign, eps: f64, seed: u64) -> Result<MeasurementDesign> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = design
        .bases()
        .iter()
        .map(|b| perturb_basis_with(&mut rng, b, eps))
        .collect::<Result<Vec<_>>>()?;
    MeasurementDesign::new(bases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis_small() {
        let b = standard_basis(2).unwrap();
        assert_eq!(b.vectors()[0].entries(), &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert_eq!(b.vectors()[1].entries(), &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(standard_basis(3).unwrap().orthonormality_defect(), 0.0);
        assert_eq!(standard_basis(1), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn primality() {
        let primes: Vec<usize> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime_power(4) && is_prime_power(9) && is_prime_power(8));
        assert!(!is_prime_power(6) && !is_prime_power(12));
    }

    #[test]
    fn mub_rejections() {
        assert_eq!(mub_prime(6), Err(Error::Composite(6)));
        assert_eq!(mub_prime(4), Err(Error::PrimePower(4)));
        assert_eq!(mub_prime(9), Err(Error::PrimePower(9)));
        assert_eq!(mub_prime(1), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn mub_unbiased_by_definition() {
        for n in [2, 3, 5, 7, 11, 13] {
            let d = mub_prime(n).unwrap();
            assert_eq!(d.bases().len(), n + 1);
            // brute-force |⟨a|b⟩|² against 1/n for every cross pair
            let target = 1.0 / n as f64;
            for (k, bk) in d.bases().iter().enumerate() {
                assert!(bk.orthonormality_defect() < 1e-12);
                for (l, bl) in d.bases().iter().enumerate() {
                    if k == l {
                        continue;
                    }
                    for a in bk.vectors() {
                        for b in bl.vectors() {
                            let overlap: Complex64 =
                                a.entries().iter().zip(b.entries()).map(|(x, y)| x.conj() * y).sum();
                            assert!((overlap.norm_sqr() - target).abs() <= 1e-12, "n={n} k={k} l={l}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn haar_is_deterministic_and_orthonormal() {
        for n in [2, 3, 5, 8] {
            let a = haar_random_basis(n, 42).unwrap();
            let b = haar_random_basis(n, 42).unwrap();
            assert_eq!(a, b);
            assert!(a.orthonormality_defect() < 1e-12);
            assert_ne!(a, haar_random_basis(n, 43).unwrap());
        }
    }

    #[test]
    fn perturbation_zero_is_identity() {
        let b = haar_random_basis(3, 7).unwrap();
        assert_eq!(perturb_basis(&b, 0.0, 11).unwrap(), b);
    }

    #[test]
    fn perturbation_keeps_orthonormality() {
        let b = mub_prime(5).unwrap().bases()[2].clone();
        for (i, eps) in [1e-6, 1e-3, 0.1, 0.5, 1.0].into_iter().enumerate() {
            let p = perturb_basis(&b, eps, i as u64).unwrap();
            assert!(p.orthonormality_defect() < 1e-12, "eps={eps}");
        }
    }

    #[test]
    fn random_hermitian_unit_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..6 {
            let h = random_hermitian(&mut rng, n).unwrap();
            let r = crate::linalg::hermitian_eigen(&h).unwrap().spectral_radius();
            assert!((r - 1.0).abs() < 1e-13);
            assert!(unitary_exp(&h, 0.3).unwrap().unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn design_validation() {
        let b = standard_basis(2).unwrap();
        assert_eq!(
            MeasurementDesign::new(alloc::vec![b.clone(), b.clone()]),
            Err(Error::BasisCount { expected: 3, found: 2 })
        );
        let c = standard_basis(3).unwrap();
        assert!(matches!(
            MeasurementDesign::new(alloc::vec![b.clone(), b, c]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn basis_validation() {
        let v = ComplexVector::basis(2, 0);
        assert!(matches!(
            OrthonormalBasis::new(alloc::vec![v.clone(), v], "dup"),
            Err(Error::NotOrthonormal(_))
        ));
    }
}
