//! Transition-probability tables s^{kl}_{ij} = |⟨a_i^k|a_j^l⟩|² between the
//! vectors of n + 1 bases, either measured from a design or synthetic.

use alloc::vec;
use alloc::vec::Vec;

use crate::bases::MeasurementDesign;
use crate::error::{Error, Result};

/// Tolerance on the identity diagonal blocks and on the symmetry relation.
pub const TABLE_EXACT_TOL: f64 = 1e-12;
/// Tolerance on row and column sums of each block.
pub const TABLE_SUM_TOL: f64 = 1e-10;

/// Transition probabilities for n + 1 bases in dimension n, indexed
/// `[k][l][i][j]` with basis indices k, l and vector indices i, j (all 0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable {
    n: usize,
    entries: Vec<f64>,
    synthetic: bool,
}

impl TransitionTable {
    /// Builds and validates a table from a `[k][l][i][j]` closure.
    pub fn from_fn(
        n: usize,
        synthetic: bool,
        mut f: impl FnMut(usize, usize, usize, usize) -> f64,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let m = n + 1;
        let mut entries = Vec::with_capacity(m * m * n * n);
        for k in 0..m {
            for l in 0..m {
                for i in 0..n {
                    for j in 0..n {
                        entries.push(f(k, l, i, j));
                    }
                }
            }
        }
        let table = Self { n, entries, synthetic };
        table.validate()?;
        Ok(table)
    }

    /// Builds from a nested `[k][l][i][j]` array.
    pub fn from_nested(n: usize, nested: &[Vec<Vec<Vec<f64>>>], synthetic: bool) -> Result<Self> {
        let m = n + 1;
        let shape_ok = nested.len() == m
            && nested.iter().all(|row| {
                row.len() == m && row.iter().all(|blk| blk.len() == n && blk.iter().all(|r| r.len() == n))
            });
        if !shape_ok {
            return Err(Error::InvalidTable("shape must be (n+1) x (n+1) x n x n"));
        }
        Self::from_fn(n, synthetic, |k, l, i, j| nested[k][l][i][j])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_bases(&self) -> usize {
        self.n + 1
    }

    pub fn is_synthetic(&self) -> bool {
        self.synthetic
    }

    #[inline]
    pub fn get(&self, k: usize, l: usize, i: usize, j: usize) -> f64 {
        let n = self.n;
        self.entries[((k * (n + 1) + l) * n + i) * n + j]
    }

    /// `[k][l][i][j]` nesting, for serialization.
    pub fn to_nested(&self) -> Vec<Vec<Vec<Vec<f64>>>> {
        let (n, m) = (self.n, self.n + 1);
        (0..m)
            .map(|k| {
                (0..m)
                    .map(|l| (0..n).map(|i| (0..n).map(|j| self.get(k, l, i, j)).collect()).collect())
                    .collect()
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let (n, m) = (self.n, self.n + 1);
        if self.entries.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidTable("non-finite entry"));
        }
        if self
            .entries
            .iter()
            .any(|&s| !(-TABLE_EXACT_TOL..=1.0 + TABLE_EXACT_TOL).contains(&s))
        {
            return Err(Error::InvalidTable("entry outside [0, 1]"));
        }
        for k in 0..m {
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    if (self.get(k, k, i, j) - want).abs() > TABLE_EXACT_TOL {
                        return Err(Error::InvalidTable("diagonal block is not the identity"));
                    }
                }
            }
        }
        for k in 0..m {
            for l in 0..m {
                for i in 0..n {
                    let row: f64 = (0..n).map(|j| self.get(k, l, i, j)).sum();
                    let col: f64 = (0..n).map(|j| self.get(k, l, j, i)).sum();
                    if (row - 1.0).abs() > TABLE_SUM_TOL || (col - 1.0).abs() > TABLE_SUM_TOL {
                        return Err(Error::InvalidTable("block is not doubly stochastic"));
                    }
                    for j in 0..n {
                        if (self.get(k, l, i, j) - self.get(l, k, j, i)).abs() > TABLE_EXACT_TOL {
                            return Err(Error::InvalidTable("table is not symmetric"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Largest |s^{kl}_{ij} - s^{kl}_{rj}| or |s^{kl}_{ij} - s^{kl}_{ir}| over
    /// k != l and all index pairs: how far each block is from being flat.
    pub fn max_spread(&self) -> f64 {
        let (n, m) = (self.n, self.n + 1);
        let mut worst = 0.0f64;
        let mut buf = vec![0.0; n];
        for k in 0..m {
            for l in 0..m {
                if k == l {
                    continue;
                }
                for j in 0..n {
                    // spread of column j, then of row j
                    for (i, x) in buf.iter_mut().enumerate() {
                        *x = self.get(k, l, i, j);
                    }
                    worst = worst.max(range(&buf));
                    for (i, x) in buf.iter_mut().enumerate() {
                        *x = self.get(k, l, j, i);
                    }
                    worst = worst.max(range(&buf));
                }
            }
        }
        worst
    }
}

fn range(xs: &[f64]) -> f64 {
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// Measured transition probabilities of a design.
pub fn transition_table(design: &MeasurementDesign) -> Result<TransitionTable> {
    let bases = design.bases();
    TransitionTable::from_fn(design.dim(), false, |k, l, i, j| {
        if k == l {
            // exact identity blocks; orthonormality was checked on construction
            return if i == j { 1.0 } else { 0.0 };
        }
        bases[k].vectors()[i].transition(&bases[l].vectors()[j])
    })
}

/// Whether c keeps both off-block values of the two-value model inside [0, 1].
pub fn two_value_admissible(n: usize, c: f64) -> bool {
    let nf = n as f64;
    let diag = 1.0 / nf - (nf - 1.0) * c;
    let off = c + 1.0 / nf;
    let slack = TABLE_EXACT_TOL;
    c.is_finite() && diag >= -slack && off <= 1.0 + slack && off >= -slack && diag <= 1.0 + slack
}

/// Synthetic table with identity diagonal blocks and off-diagonal blocks
/// holding 1/n - (n-1)c on the diagonal and c + 1/n elsewhere.
pub fn two_value_table(n: usize, c: f64) -> Result<TransitionTable> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if !two_value_admissible(n, c) {
        return Err(Error::InadmissibleParameter { n, c });
    }
    let nf = n as f64;
    let same = 1.0 / nf - (nf - 1.0) * c;
    let other = c + 1.0 / nf;
    TransitionTable::from_fn(n, true, |k, l, i, j| match (k == l, i == j) {
        (true, true) => 1.0,
        (true, false) => 0.0,
        (false, true) => same,
        (false, false) => other,
    })
}

/// The two-value table at c = 1/n²: (n+1)/n² off the diagonal, 1/n² on it.
pub fn krsw_table(n: usize) -> Result<TransitionTable> {
    let nf = n as f64;
    two_value_table(n, 1.0 / (nf * nf))
}
