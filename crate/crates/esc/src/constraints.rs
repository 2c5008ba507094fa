//! The feasible set `C = { phi : 1^T phi = V0, |phi_k| <= 1 }` and the exact
//! Euclidean projection onto it.
//!
//! The projection is `clip(phi - lambda* 1)` where `lambda*` is a root of the
//! nonincreasing piecewise-linear function
//! `f(lambda) = 1^T clip(phi - lambda 1) - V0`. Bisection localizes the active
//! pattern, then one exact linear solve on the identified free set snaps the
//! mass error to rounding level.

use crate::error::{EscError, Result};
use crate::grid::PhaseField;

/// Mass hyperplane intersected with the box `[-1, 1]^n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstraintSet {
    v0: f64,
    n: usize,
}

impl ConstraintSet {
    /// Target mass `V0` for fields of `n` nodes. Fails when `|V0| > n`, which
    /// makes the set empty.
    pub fn new(v0: f64, n: usize) -> Result<Self> {
        if v0.abs() > n as f64 {
            return Err(EscError::InfeasibleConstraint {
                v0_abs: v0.abs(),
                n,
            });
        }
        Ok(ConstraintSet { v0, n })
    }

    /// Constraint set matching the discrete mass of `phi`.
    pub fn conserving(phi: &PhaseField) -> Result<Self> {
        ConstraintSet::new(phi.sum(), phi.values().len())
    }

    pub fn target_mass(&self) -> f64 {
        self.v0
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

fn clip(v: f64) -> f64 {
    v.min(1.0).max(-1.0)
}

fn mass_after_shift(values: &[f64], lambda: f64) -> f64 {
    values.iter().map(|&v| clip(v - lambda)).sum()
}

/// Euclidean projection onto the set. The result satisfies the box bounds
/// exactly and the mass constraint to rounding level; projecting an already
/// feasible field returns it unchanged.
pub fn project(phi: &PhaseField, set: &ConstraintSet) -> Result<PhaseField> {
    let (field, _) = project_with_multiplier(phi, set)?;
    Ok(field)
}

/// Projection plus the shift `lambda*` it applied.
pub fn project_with_multiplier(phi: &PhaseField, set: &ConstraintSet) -> Result<(PhaseField, f64)> {
    if phi.values().len() != set.n {
        return Err(EscError::DimensionMismatch {
            expected: set.n,
            got: phi.values().len(),
        });
    }
    let values = phi.values();
    let v0 = set.v0;

    // A feasible input projects to itself with lambda = 0.
    if mass_after_shift(values, 0.0) == v0 && values.iter().all(|&v| v.abs() <= 1.0) {
        return Ok((phi.clone(), 0.0));
    }

    // Bracket: at min(phi) - 1 every entry clips to +1, at max(phi) + 1 to -1.
    let mut lo = values.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
    let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1.0;
    let f_tol = 1e-12 * set.n as f64;
    let mut lambda = 0.5 * (lo + hi);
    for _ in 0..200 {
        lambda = 0.5 * (lo + hi);
        let f = mass_after_shift(values, lambda) - v0;
        if f > 0.0 {
            lo = lambda;
        } else {
            hi = lambda;
        }
        if hi - lo <= 1e-14 * (1.0 + lambda.abs()) && f.abs() <= f_tol {
            break;
        }
    }

    // Snap: resolve the active pattern at the bisection estimate and solve
    // the resulting linear equation for lambda exactly. The pattern may shift
    // once the exact root lands on a breakpoint, so iterate a few times.
    for _ in 0..4 {
        let mut free = 0usize;
        let mut free_sum = 0.0;
        let mut clipped = 0.0;
        for &v in values {
            let shifted = v - lambda;
            if shifted >= 1.0 {
                clipped += 1.0;
            } else if shifted <= -1.0 {
                clipped -= 1.0;
            } else {
                free += 1;
                free_sum += v;
            }
        }
        if free == 0 {
            break;
        }
        let next = (free_sum + clipped - v0) / free as f64;
        if next == lambda {
            break;
        }
        lambda = next;
    }

    let projected = values.iter().map(|&v| clip(v - lambda)).collect();
    Ok((PhaseField::new(phi.spec(), projected)?, lambda))
}

/// Feasibility diagnostics: the mass error relative to `max(|V0|, 1)` and the
/// box violation `max(0, |phi|_inf - 1)`.
pub fn residual(phi: &PhaseField, set: &ConstraintSet) -> (f64, f64) {
    let mass = phi.sum();
    let mass_error = (mass - set.v0) / set.v0.abs().max(1.0);
    let sup = phi.values().iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    (mass_error, (sup - 1.0).max(0.0))
}
