//! Seeded random-direction hill climbing on ½·ln det Γ.
//!
//! Each step rotates one randomly chosen basis by exp(i·step·H) with H a
//! random unit-radius Hermitian matrix and keeps the move only if the
//! information strictly increases. After 50 consecutive rejections the step
//! is halved.

use alloc::vec::Vec;

// unused when std is linked and its inherent float methods take over
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bases::{perturb_basis_with, MeasurementDesign};
use crate::error::{Error, Result};
use crate::gram::{design_gram, det_gamma0, DropIndex};
use crate::report::SINGULAR_VD_TOL;

pub const REJECTIONS_BEFORE_ANNEAL: usize = 50;
/// Minimum improvement for a move to count; keeps rounding noise from being accepted.
pub const ACCEPT_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub design: MeasurementDesign,
    /// Information after each step, starting with the initial value.
    pub trace: Vec<f64>,
    pub accepted: usize,
    pub final_step: f64,
}

impl OptimizeOutcome {
    pub fn final_info(&self) -> f64 {
        *self.trace.last().expect("trace holds the initial value")
    }
}

/// ½·ln det Γ in nats, -inf for singular designs.
pub fn design_info(design: &MeasurementDesign) -> Result<f64> {
    let n = design.dim();
    let det = design_gram(design, DropIndex::last(n))?.determinant();
    let vd = det / det_gamma0(n);
    if vd.is_nan() || vd <= SINGULAR_VD_TOL {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(0.5 * det.ln())
}

/// The global maximum ½·ln det Γ₀ = -(n+1)/2 · ln n.
pub fn max_info(n: usize) -> f64 {
    0.5 * det_gamma0(n).ln()
}

pub fn optimize_design(
    start: &MeasurementDesign,
    steps: usize,
    step_size: f64,
    seed: u64,
) -> Result<OptimizeOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut design = start.clone();
    let mut info = design_info(&design)?;
    if info == f64::NEG_INFINITY {
        return Err(Error::Singular);
    }
    let mut trace = Vec::with_capacity(steps + 1);
    trace.push(info);
    let mut step = step_size;
    let mut rejections = 0;
    let mut accepted = 0;
    let nbases = design.bases().len();

    for _ in 0..steps {
        let k = rng.random_range(0..nbases);
        let moved = perturb_basis_with(&mut rng, &design.bases()[k], step)?;
        let mut candidate = design.clone();
        candidate.bases_mut()[k] = moved;
        let candidate_info = design_info(&candidate)?;
        if candidate_info > info + ACCEPT_TOL {
            candidate.bases_mut()[k].reorthonormalize();
            design = candidate;
            info = design_info(&design)?;
            accepted += 1;
            rejections = 0;
        } else {
            rejections += 1;
            if rejections == REJECTIONS_BEFORE_ANNEAL {
                step *= 0.5;
                rejections = 0;
            }
        }
        trace.push(info);
    }
    Ok(OptimizeOutcome { design, trace, accepted, final_step: step })
}
