//! Complex vectors and square matrices, Hermitian eigendecomposition and the
//! unitary exponential built on it.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
// unused when std is linked and its inherent float methods take over
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// A ket: n complex amplitudes, n >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::DimensionTooSmall(entries.len()));
        }
        Ok(Self(entries))
    }

    /// Unit vector e_k in dimension n.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = vec![Complex64::zero(); n];
        v[k] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    /// |⟨self|other⟩|².
    pub fn transition(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { Complex64::new(1.0, 0.0) } else { Complex64::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    /// Matrix whose k-th column is `columns[k]`.
    pub fn from_columns(columns: &[ComplexVector]) -> Self {
        let n = columns.len();
        Self::from_fn(n, |r, c| columns[c][r])
    }

    /// |a⟩⟨b|
    pub fn outer(a: &ComplexVector, b: &ComplexVector) -> Self {
        Self::from_fn(a.dim(), |r, c| a[r] * b[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, c: usize) -> ComplexVector {
        ComplexVector((0..self.n).map(|r| self[(r, c)]).collect())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.n, v.dim());
        ComplexVector(
            (0..self.n)
                .map(|r| (0..self.n).map(|c| self[(r, c)] * v[c]).sum())
                .collect(),
        )
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Largest |a_ij - conj(a_ji)|.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.n {
            for c in r..self.n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Largest deviation of M†M from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.n))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.n + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "incompatible shapes");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

/// Real eigenvalues (ascending) and unitary eigenvector matrix (columns).
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// V diag(f(λ)) V†.
    pub fn map(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n)
                .map(|k| self.vectors[(r, k)] * fv[k] * self.vectors[(c, k)].conj())
                .sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix. Each complex Jacobi step first
/// rephases column q so the pivot is real, then applies a real rotation.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.n;
    let scale = h.data.iter().fold(1.0f64, |m, x| m.max(x.norm()));
    let defect = h.hermitian_defect();
    if defect > crate::SYMMETRY_TOL * scale {
        return Err(Error::NotHermitian(defect));
    }
    let mut a = ComplexMatrix::from_fn(n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.is_zero() {
                    continue;
                }
                let r = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let g = 100.0 * r;
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[(p, q)] = Complex64::zero();
                    a[(q, p)] = Complex64::zero();
                    continue;
                }
                // P = diag(.., e^{-iφ} at q, ..) makes (P† A P)_pq = |a_pq|.
                let phase = apq.conj() / r;
                for k in 0..n {
                    a[(k, q)] *= phase;
                    v[(k, q)] *= phase;
                }
                let phase_conj = phase.conj();
                for k in 0..n {
                    a[(q, k)] *= phase_conj;
                }
                let (c, s) = super::real::jacobi_rotation(app, aqq, r);
                for k in 0..n {
                    let mp = a[(k, p)];
                    let mq = a[(k, q)];
                    a[(k, p)] = mp * c - mq * s;
                    a[(k, q)] = mp * s + mq * c;
                }
                for k in 0..n {
                    let mp = a[(p, k)];
                    let mq = a[(q, k)];
                    a[(p, k)] = mp * c - mq * s;
                    a[(q, k)] = mp * s + mq * c;
                }
                a[(p, q)] = Complex64::zero();
                a[(q, p)] = Complex64::zero();
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                for k in 0..n {
                    let mp = v[(k, p)];
                    let mq = v[(k, q)];
                    v[(k, p)] = mp * c - mq * s;
                    v[(k, q)] = mp * s + mq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// exp(i t H) for Hermitian H.
pub fn unitary_exp(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(h)?;
    Ok(eig.map(|l| Complex64::from_polar(1.0, t * l)))
}

/// Orthonormalizes the columns of a full-rank matrix with two passes of
/// modified Gram-Schmidt. The implied R has a positive real diagonal.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.n;
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| m.column(c).0).collect();
    for k in 0..n {
        for _pass in 0..2 {
            for j in 0..k {
                let proj: Complex64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a.conj() * b).sum();
                let (head, tail) = cols.split_at_mut(k);
                for (x, q) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = cols[k].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Singular);
        }
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    Ok(ComplexMatrix::from_fn(n, |r, c| cols[c][r]))
}
