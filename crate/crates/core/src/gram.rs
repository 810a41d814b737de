//! The Gram matrix of the traceless operators T_i^k = P_i^k - I/n.
//!
//! One projector per basis is linearly dependent on the rest, so each basis
//! contributes n - 1 rows; by default the last vector is the one left out.
//! Rows and columns are ordered by the pair (basis k, kept vector i), giving
//! n + 1 square blocks of size n - 1.

use alloc::vec::Vec;

use num_complex::Complex64;
// unused when std is linked and its inherent float methods take over
#[allow(unused_imports)]
use num_traits::Float;

use crate::bases::MeasurementDesign;
use crate::error::{Error, Result};
use crate::linalg::{determinant, ComplexMatrix, RealMatrix};
use crate::operators::{hs_inner, projector, HermitianOperator};
use crate::table::{transition_table, TransitionTable};

/// Which vector of every basis is left out of the coordinate system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DropIndex(usize);

impl DropIndex {
    /// 0-based index into each basis.
    pub fn new(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::DropIndex { n, index });
        }
        Ok(Self(index))
    }

    pub fn last(n: usize) -> Self {
        Self(n - 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// The n - 1 vector indices that remain.
    pub fn kept(self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| i != self.0).collect()
    }
}

/// Γ with entries s^{kl}_{ij} - 1/n.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    n: usize,
    drop: DropIndex,
    gamma: RealMatrix,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn drop_index(&self) -> DropIndex {
        self.drop
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.gamma
    }

    /// Side length n - 1 of each block.
    pub fn block_size(&self) -> usize {
        self.n - 1
    }

    /// γ^{kl}.
    pub fn block(&self, k: usize, l: usize) -> RealMatrix {
        let b = self.block_size();
        RealMatrix::from_fn(b, b, |i, j| self.gamma[(k * b + i, l * b + j)])
    }

    /// Numeric det Γ (LU).
    pub fn determinant(&self) -> f64 {
        determinant(&self.gamma).expect("square")
    }

    /// Product of the diagonal-block determinants, the Fischer-Hadamard bound.
    pub fn diagonal_block_product(&self) -> f64 {
        (0..=self.n)
            .map(|k| determinant(&self.block(k, k)).expect("square"))
            .product()
    }

    /// Largest |entry| of any off-diagonal block.
    pub fn off_block_max(&self) -> f64 {
        let b = self.block_size();
        let mut worst = 0.0f64;
        for r in 0..self.gamma.rows() {
            for c in 0..self.gamma.cols() {
                if r / b != c / b {
                    worst = worst.max(self.gamma[(r, c)].abs());
                }
            }
        }
        worst
    }
}

/// Γ from a transition table, leaving out the last vector of each basis.
pub fn gram_matrix(table: &TransitionTable) -> GramMatrix {
    gram_matrix_dropping(table, DropIndex::last(table.dim()))
}

pub fn gram_matrix_dropping(table: &TransitionTable, drop: DropIndex) -> GramMatrix {
    let n = table.dim();
    let kept = drop.kept(n);
    let b = n - 1;
    let size = (n + 1) * b;
    let inv_n = 1.0 / n as f64;
    let gamma = RealMatrix::from_fn(size, size, |r, c| {
        let (k, i) = (r / b, kept[r % b]);
        let (l, j) = (c / b, kept[c % b]);
        table.get(k, l, i, j) - inv_n
    });
    GramMatrix { n, drop, gamma }
}

/// Hilbert-Schmidt orthonormal basis of the traceless Hermitian n x n
/// matrices (generalized Gell-Mann matrices scaled by 1/√2).
pub fn traceless_hermitian_basis(n: usize) -> Vec<HermitianOperator> {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in j + 1..n {
            let mut sym = ComplexMatrix::zeros(n);
            sym[(j, k)] = Complex64::new(h, 0.0);
            sym[(k, j)] = Complex64::new(h, 0.0);
            out.push(HermitianOperator::new_unchecked(sym));
            let mut anti = ComplexMatrix::zeros(n);
            anti[(j, k)] = Complex64::new(0.0, -h);
            anti[(k, j)] = Complex64::new(0.0, h);
            out.push(HermitianOperator::new_unchecked(anti));
        }
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = ComplexMatrix::zeros(n);
        for m in 0..l {
            diag[(m, m)] = Complex64::new(norm, 0.0);
        }
        diag[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        out.push(HermitianOperator::new_unchecked(diag));
    }
    out
}

/// Real coordinates of every T_i^k in the traceless Hermitian basis, one row
/// per (k, kept i).
pub fn coordinate_matrix(design: &MeasurementDesign, drop: DropIndex) -> Result<RealMatrix> {
    let n = design.dim();
    let frame = traceless_hermitian_basis(n);
    let shift = ComplexMatrix::identity(n).scale(Complex64::new(1.0 / n as f64, 0.0));
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity((n + 1) * (n - 1));
    for basis in design.bases() {
        for i in drop.kept(n) {
            let p = projector(&basis.vectors()[i])?;
            let t = HermitianOperator::new_unchecked(p.matrix().sub(&shift));
            rows.push(frame.iter().map(|g| hs_inner(g, &t)).collect::<Result<Vec<_>>>()?);
        }
    }
    Ok(RealMatrix::from_rows(&rows))
}

/// Γ assembled as 𝒯𝒯ᵗ from explicit operator coordinates.
pub fn gram_from_coords(design: &MeasurementDesign) -> Result<GramMatrix> {
    gram_from_coords_dropping(design, DropIndex::last(design.dim()))
}

pub fn gram_from_coords_dropping(design: &MeasurementDesign, drop: DropIndex) -> Result<GramMatrix> {
    let coords = coordinate_matrix(design, drop)?;
    let gamma = &coords * &coords.transpose();
    Ok(GramMatrix { n: design.dim(), drop, gamma })
}

/// Γ of a design through its transition table.
pub fn design_gram(design: &MeasurementDesign, drop: DropIndex) -> Result<GramMatrix> {
    Ok(gram_matrix_dropping(&transition_table(design)?, drop))
}

/// det Γ₀ = n^{-(n+1)}: each diagonal block I - T/n has determinant 1/n.
pub fn det_gamma0(n: usize) -> f64 {
    (n as f64).powi(-((n + 1) as i32))
}

/// Block-diagonal Γ₀ with n + 1 copies of I - T/n (T all ones).
pub fn gamma0(n: usize) -> RealMatrix {
    let b = n - 1;
    let inv_n = 1.0 / n as f64;
    RealMatrix::from_fn((n + 1) * b, (n + 1) * b, |r, c| {
        if r / b != c / b {
            0.0
        } else if r == c {
            1.0 - inv_n
        } else {
            -inv_n
        }
    })
}

/// Γ normalized by its diagonal blocks.
#[derive(Debug, Clone)]
pub struct ReducedMatrix {
    n: usize,
    /// Γ₀⁻¹Γ: identity diagonal blocks, off-diagonal blocks Ψ^{kl}_{ij} = s^{kl}_{ij} - s^{kl}_{dj}.
    pub tilde: RealMatrix,
    /// Γ₀^{-1/2} Γ Γ₀^{-1/2}: symmetric with unit diagonal, same spectrum as `tilde`.
    pub symmetrized: RealMatrix,
}

impl ReducedMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn determinant(&self) -> f64 {
        determinant(&self.tilde).expect("square")
    }
}

pub fn reduced_matrix(table: &TransitionTable) -> ReducedMatrix {
    reduced_matrix_dropping(table, DropIndex::last(table.dim()))
}

pub fn reduced_matrix_dropping(table: &TransitionTable, drop: DropIndex) -> ReducedMatrix {
    let n = table.dim();
    let kept = drop.kept(n);
    let d = drop.get();
    let b = n - 1;
    let size = (n + 1) * b;
    let tilde = RealMatrix::from_fn(size, size, |r, c| {
        let (k, ri) = (r / b, r % b);
        let (l, cj) = (c / b, c % b);
        if k == l {
            return if ri == cj { 1.0 } else { 0.0 };
        }
        let (i, j) = (kept[ri], kept[cj]);
        table.get(k, l, i, j) - table.get(k, l, d, j)
    });

    // γ^{-1/2} = I + (√n - 1) T/(n - 1) for γ = I - T/n.
    let coef = ((n as f64).sqrt() - 1.0) / b as f64;
    let half_inv = RealMatrix::from_fn(size, size, |r, c| {
        if r / b != c / b {
            0.0
        } else if r == c {
            1.0 + coef
        } else {
            coef
        }
    });
    let gamma = gram_matrix_dropping(table, drop);
    let raw = &(&half_inv * gamma.matrix()) * &half_inv;
    let symmetrized = RealMatrix::from_fn(size, size, |r, c| {
        if r / b == c / b {
            if r == c {
                1.0
            } else {
                0.0
            }
        } else {
            0.5 * (raw[(r, c)] + raw[(c, r)])
        }
    });
    ReducedMatrix { n, tilde, symmetrized }
}
