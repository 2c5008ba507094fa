//! The discrete energy and its convex/concave splitting.
//!
//! The objective splits as `E_h = F + H` with
//!
//! ```text
//!   F(phi) = (a eps^2 / 2) phi^T L phi + (b/2) sum_k phi_k^2,
//!   H(phi) = sum_k ( f(phi_k) - (b/2) phi_k^2
//!            + (eps^2/2) gamma^2(n_k) |p_k|^2 ) - (a eps^2 / 2) phi^T L phi,
//! ```
//!
//! plus the indicator `G` of the constraint set. For `a` and `b` large enough
//! `H` is concave, which is what the three-operator iteration needs. The
//! double-well `f` is truncated to quadratic tails beyond `|phi| = M` so its
//! second derivative stays bounded by `3M^2 - 1`; the original quartic is kept
//! behind a flag.

use crate::anisotropy::AnisotropyModel;
use crate::constraints::ConstraintSet;
use crate::error::{EscError, Result};
use crate::grid::{adjoint_diff, apply_neg_laplacian, forward_diff, GradientField, PhaseField};

/// Constants of the splitting and the potential.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplittingParams {
    /// Quadratic gradient stabilization moved into `F`.
    pub a: f64,
    /// Pointwise stabilization moved into `F`.
    pub b: f64,
    /// Interface thickness.
    pub epsilon: f64,
    /// Truncation bound `M >= 1` for the double-well tails.
    pub truncation: f64,
    /// Use the truncated potential (default) or the original quartic.
    pub use_truncated: bool,
}

impl Default for SplittingParams {
    fn default() -> Self {
        SplittingParams {
            a: 10.0,
            b: 2.0,
            epsilon: 0.02,
            truncation: 1.0,
            use_truncated: true,
        }
    }
}

impl SplittingParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.b > 0.0 && self.epsilon > 0.0) {
            return Err(EscError::Config(format!(
                "splitting constants must be positive: a={}, b={}, eps={}",
                self.a, self.b, self.epsilon
            )));
        }
        if self.truncation < 1.0 {
            return Err(EscError::Config(format!(
                "truncation bound must be >= 1, got {}",
                self.truncation
            )));
        }
        Ok(())
    }
}

/// Discrete energy in both the plain-sum and mesh-scaled normalizations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport {
    /// `sum_k ( f(phi_k) + (eps^2/2) gamma^2(n_k) |p_k|^2 )`.
    pub raw_sum: f64,
    /// `h^dim` times the raw sum; approximates the continuum integral and is
    /// comparable across mesh resolutions.
    pub scaled: f64,
}

/// Double-well value and derivative at one node. With `use_truncated` the
/// quartic is continued by quadratics beyond `|phi| = M`, matched to C^1.
pub fn double_well(phi: f64, params: &SplittingParams) -> (f64, f64) {
    let m = params.truncation;
    if params.use_truncated && phi.abs() > m {
        let c2 = (3.0 * m * m - 1.0) / 2.0;
        let c1 = 2.0 * m * m * m;
        let c0 = (3.0 * m * m * m * m + 1.0) / 4.0;
        if phi > 0.0 {
            (c2 * phi * phi - c1 * phi + c0, 2.0 * c2 * phi - c1)
        } else {
            (c2 * phi * phi + c1 * phi + c0, 2.0 * c2 * phi + c1)
        }
    } else {
        let q = phi * phi - 1.0;
        (0.25 * q * q, phi * phi * phi - phi)
    }
}

/// The discretized energy `E_h`. Zero-gradient nodes contribute only the
/// potential term.
pub fn discrete_energy(
    phi: &PhaseField,
    model: &AnisotropyModel,
    params: &SplittingParams,
) -> EnergyReport {
    let spec = phi.spec();
    let dim = spec.dim();
    let p = forward_diff(phi);
    let half_eps2 = 0.5 * params.epsilon * params.epsilon;
    let mut raw = 0.0;
    for (k, &v) in phi.values().iter().enumerate() {
        raw += double_well(v, params).0;
        let pk = p.node(k);
        let norm_sq = pk[0] * pk[0] + pk[1] * pk[1] + pk[2] * pk[2];
        if norm_sq > 0.0 {
            let norm = norm_sq.sqrt();
            let n = [pk[0] / norm, pk[1] / norm, pk[2] / norm];
            let g = model.gamma(&n[..dim]);
            raw += half_eps2 * g * g * norm_sq;
        }
    }
    let scaled = spec.h().powi(dim as i32) * raw;
    EnergyReport { raw_sum: raw, scaled }
}

/// `F(phi) = (a eps^2/2) phi^T L phi + (b/2) sum phi_k^2`, computed through
/// the gradient identity `phi^T L phi = sum_k |p_k|^2`.
pub fn splitting_f(phi: &PhaseField, params: &SplittingParams) -> f64 {
    let quad = forward_diff(phi).norm_sq_sum();
    let sq: f64 = phi.values().iter().map(|v| v * v).sum();
    0.5 * params.a * params.epsilon * params.epsilon * quad + 0.5 * params.b * sq
}

/// `grad F = a eps^2 L phi + b phi`.
pub fn grad_f(phi: &PhaseField, params: &SplittingParams) -> PhaseField {
    let mut out = apply_neg_laplacian(phi);
    let c = params.a * params.epsilon * params.epsilon;
    for (o, &v) in out.values_mut().iter_mut().zip(phi.values()) {
        *o = c * *o + params.b * v;
    }
    out
}

/// `H = E_h - F` evaluated directly from its definition.
pub fn splitting_h(phi: &PhaseField, model: &AnisotropyModel, params: &SplittingParams) -> f64 {
    let spec = phi.spec();
    let dim = spec.dim();
    let p = forward_diff(phi);
    let half_eps2 = 0.5 * params.epsilon * params.epsilon;
    let mut h = 0.0;
    for (k, &v) in phi.values().iter().enumerate() {
        h += double_well(v, params).0 - 0.5 * params.b * v * v;
        let pk = p.node(k);
        let norm_sq = pk[0] * pk[0] + pk[1] * pk[1] + pk[2] * pk[2];
        if norm_sq > 0.0 {
            let norm = norm_sq.sqrt();
            let n = [pk[0] / norm, pk[1] / norm, pk[2] / norm];
            let g = model.gamma(&n[..dim]);
            h += half_eps2 * (g * g - params.a) * norm_sq;
        }
    }
    h
}

/// The per-node flux field `A(p_k)` of the energy gradient.
pub fn flux_field(p: &GradientField, model: &AnisotropyModel, a: f64) -> GradientField {
    let spec = p.spec();
    let dim = spec.dim();
    let n = spec.n_nodes();
    let mut flux = GradientField::zeros(spec);
    for k in 0..n {
        let f = model.flux(p.node(k), dim, a);
        for c in 0..dim {
            flux.component_mut(c)[k] = f[c];
        }
    }
    flux
}

/// `grad H = f'(phi) - b phi + eps^2 sum_c D_c^T A_c(p)`.
pub fn grad_h(phi: &PhaseField, model: &AnisotropyModel, params: &SplittingParams) -> PhaseField {
    let p = forward_diff(phi);
    let flux = flux_field(&p, model, params.a);
    let mut out = adjoint_diff(&flux);
    let eps2 = params.epsilon * params.epsilon;
    for (o, &v) in out.values_mut().iter_mut().zip(phi.values()) {
        *o = double_well(v, params).1 - params.b * v + eps2 * *o;
    }
    out
}

/// The descent function of the three-operator iteration:
///
/// ```text
///   Theta_tau = F(y) + G(z) + H(y)
///             + (1/2 tau) |2y - z - x - tau grad H(y)|^2
///             - (1/2 tau) |x - y + tau grad H(y)|^2
///             - (1/tau)   |y - z|^2,
/// ```
///
/// with `G(z) = 0` for feasible `z` and `+inf` otherwise.
pub fn theta_energy(
    x: &PhaseField,
    y: &PhaseField,
    z: &PhaseField,
    tau: f64,
    model: &AnisotropyModel,
    params: &SplittingParams,
    set: &ConstraintSet,
) -> f64 {
    debug_assert!(tau > 0.0);
    let (mass_err, box_violation) = crate::constraints::residual(z, set);
    if mass_err.abs() > 1e-9 || box_violation > 1e-12 {
        return f64::INFINITY;
    }
    let gh = grad_h(y, model, params);
    let mut q1 = 0.0; // |2y - z - x - tau gh|^2
    let mut q2 = 0.0; // |x - y + tau gh|^2
    let mut q3 = 0.0; // |y - z|^2
    for k in 0..y.values().len() {
        let (xv, yv, zv, gv) = (x.values()[k], y.values()[k], z.values()[k], gh.values()[k]);
        let d1 = 2.0 * yv - zv - xv - tau * gv;
        let d2 = xv - yv + tau * gv;
        let d3 = yv - zv;
        q1 += d1 * d1;
        q2 += d2 * d2;
        q3 += d3 * d3;
    }
    splitting_f(y, params) + splitting_h(y, model, params) + 0.5 / tau * q1 - 0.5 / tau * q2
        - q3 / tau
}

/// Samples the spectral norm of the Hessian of `p -> gamma^2(p/|p|) |p|^2`
/// on the unit circle by central finite differences. The function is
/// homogeneous of degree two, so its Hessian is constant along rays and the
/// circle suffices; the returned maximum is an empirical lower bound on the
/// splitting constant `a` that keeps `H` concave.
pub fn estimate_concavity_margin(model: &AnisotropyModel, samples: usize) -> Result<f64> {
    if !model.supports_dim(2) {
        return Err(EscError::Unsupported(
            "concavity margin sampling needs a 2D model".into(),
        ));
    }
    if samples < 8 {
        return Err(EscError::Config(format!(
            "concavity margin needs at least 8 samples, got {samples}"
        )));
    }
    let zeta = |x: [f64; 2]| -> f64 {
        let r2 = x[0] * x[0] + x[1] * x[1];
        if r2 == 0.0 {
            return 0.0;
        }
        let r = r2.sqrt();
        let g = model.gamma(&[x[0] / r, x[1] / r]);
        g * g * r2
    };
    let delta = 1e-4;
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / samples as f64;
        let p = [theta.cos(), theta.sin()];
        let mut hess = [[0.0; 2]; 2];
        for c in 0..2 {
            let mut hi = p;
            let mut lo = p;
            hi[c] += delta;
            lo[c] -= delta;
            hess[c][c] = (zeta(hi) - 2.0 * zeta(p) + zeta(lo)) / (delta * delta);
        }
        let pp = [p[0] + delta, p[1] + delta];
        let pm = [p[0] + delta, p[1] - delta];
        let mp = [p[0] - delta, p[1] + delta];
        let mm = [p[0] - delta, p[1] - delta];
        let off = (zeta(pp) - zeta(pm) - zeta(mp) + zeta(mm)) / (4.0 * delta * delta);
        hess[0][1] = off;
        hess[1][0] = off;
        let mean = 0.5 * (hess[0][0] + hess[1][1]);
        let disc = (0.25 * (hess[0][0] - hess[1][1]).powi(2) + off * off).sqrt();
        let spectral = (mean + disc).abs().max((mean - disc).abs());
        worst = worst.max(spectral);
    }
    Ok(worst)
}
