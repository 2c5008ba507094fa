//! Equilibrium shapes of crystals (ESC) by direct minimization of the
//! discretized anisotropic phase-field energy.
//!
//! The discrete problem is
//!
//! ```text
//!   minimize   E_h(phi) = sum_k ( f(phi_k) + (eps^2/2) gamma^2(n_k) |p_k|^2 )
//!   subject to 1^T phi = V0  and  |phi_k| <= 1,
//! ```
//!
//! where `p_k` are forward difference quotients on a periodic cell-centered
//! grid, `n_k = p_k/|p_k|`, and `gamma` is an orientation-dependent surface
//! energy density. The primary solver splits the objective into a convex
//! quadratic `F`, the indicator `G` of the mass/box constraint set, and a
//! concave remainder `H`, and runs a three-operator (Davis-Yin) splitting
//! iteration whose substeps are an exact spectral solve, a Euclidean
//! projection, and a gradient step. Every iterate conserves the discrete mass
//! and stays inside the box, and strongly anisotropic equilibria keep their
//! sharp corners.
//!
//! Supporting machinery: a regularized `H^{-1}` gradient-flow baseline for
//! comparisons, a Wulff-construction oracle producing the exact 2D equilibrium
//! polygon, zero level-set contour extraction, and the symmetric-difference
//! shape distance.
//!
//! The `examples/` directory holds one runnable driver per capability; the
//! thin `esc` binary exposes the same drivers as subcommands for scripted
//! runs.

pub mod anisotropy;
pub mod config;
pub mod constraints;
pub mod dys;
pub mod energy;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod gradient_flow;
pub mod grid;
pub mod init;
pub mod spectral;

#[cfg(test)]
pub(crate) mod testutil;

pub use anisotropy::AnisotropyModel;
pub use error::{EscError, Result};
pub use grid::{GridSpec, PhaseField};
