//! Information content of projective measurement designs for quantum state
//! tomography.
//!
//! A design is n + 1 orthonormal bases of C^n. Its projectors, shifted to be
//! traceless, span a parallelepiped whose squared volume is det Γ, the Gram
//! determinant of the shifted projectors. The log-volume measures how much a
//! tomography experiment in those bases reveals about an unknown state; it is
//! maximal exactly for mutually unbiased bases. This crate builds designs,
//! computes Γ and its derived quantities, reconstructs states by linear
//! inversion and evaluates discrete Lindley information.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
extern crate alloc;

pub mod bases;
pub mod error;
pub mod gram;
pub mod lindley;
pub mod linalg;
pub mod operators;
pub mod optimize;
pub mod report;
pub mod table;
pub mod tomography;

pub use bases::{
    haar_random_basis, haar_random_design, mub_prime, perturb_basis, perturb_design, standard_basis,
    MeasurementDesign, OrthonormalBasis,
};
pub use error::{Error, Result};
pub use gram::{det_gamma0, gram_from_coords, gram_matrix, reduced_matrix, DropIndex, GramMatrix, ReducedMatrix};
pub use lindley::{average_info, design_experiment, marginal, pointwise_info, DiscreteExperiment, LogBase};
pub use operators::{hs_inner, outcome_probability, projector, HermitianOperator};
pub use optimize::{optimize_design, OptimizeOutcome};
pub use report::{info_report, two_value_spectrum, InfoReport, TwoValueSpectrum};
pub use table::{krsw_table, transition_table, two_value_table, TransitionTable};
pub use tomography::reconstruct_state;

/// Absolute tolerance for hermiticity and symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Absolute tolerance for |⟨a_i|a_j⟩ - δ_ij|.
pub const ORTHONORMAL_TOL: f64 = 1e-12;
/// Absolute tolerance for |‖v‖² - 1|.
pub const NORMALIZATION_TOL: f64 = 1e-12;
