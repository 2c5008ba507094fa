//! Anisotropic surface energy densities `gamma(n)`.
//!
//! Every model evaluates `gamma`, its gradient `grad gamma` (taken on the
//! natural extension of `gamma` off the unit sphere), and the per-node flux
//! vector
//!
//! ```text
//!   A(p) = (gamma^2(n) - a) p + gamma(n) |p| (I - n n^T) grad gamma(n),
//! ```
//!
//! with `n = p/|p|` and `A(0) = 0`, which is the quantity the energy gradient
//! transports through the adjoint difference operator. 2D models additionally
//! expose the angle parametrization `gamma(theta)` used by the Wulff
//! construction.
//!
//! Admissible parameters: `alpha >= 0` for the fold models (`alpha < 1` keeps
//! `gamma > 0` for the k-fold family), `delta > 0` for each Riemannian metric
//! term, and a symmetric positive-definite matrix for the ellipsoidal form.

use crate::error::{EscError, Result};

/// One term `sqrt(n . G n)` of the Riemannian metric form, with
/// `G = R(psi)^T diag(1, delta^2) R(psi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricTerm {
    pub psi: f64,
    pub delta: f64,
    g: [[f64; 2]; 2],
}

impl MetricTerm {
    pub fn new(psi: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(EscError::Config(format!(
                "metric term requires delta > 0, got {delta}"
            )));
        }
        let (s, c) = psi.sin_cos();
        let d2 = delta * delta;
        // R(psi) = [[c, s], [-s, c]], G = R(-psi) diag(1, d2) R(psi).
        let g = [
            [c * c + d2 * s * s, c * s - d2 * s * c],
            [c * s - d2 * s * c, s * s + d2 * c * c],
        ];
        Ok(MetricTerm { psi, delta, g })
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.g
    }
}

/// Surface energy density model. Constructed through the checked builders;
/// evaluation is pure and thread-safe.
#[derive(Clone, Debug, PartialEq)]
pub enum AnisotropyModel {
    /// `gamma = 1`.
    Isotropic,
    /// `gamma(n) = 1 + alpha (4 sum_i n_i^4 - 3)`, any dimension.
    Fourfold { alpha: f64 },
    /// `gamma(theta) = 1 + alpha cos(k theta)`, 2D.
    KFold { k: u32, alpha: f64 },
    /// `gamma(n) = sum_k sqrt(G_k n . n)`, 2D.
    Riemannian { terms: Vec<MetricTerm> },
    /// `gamma(n) = sqrt(R n . n)` for a symmetric positive-definite `R`.
    Ellipsoidal { dim: usize, r: [[f64; 3]; 3] },
}

impl AnisotropyModel {
    pub fn isotropic() -> Self {
        AnisotropyModel::Isotropic
    }

    pub fn fourfold(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0) {
            return Err(EscError::Config(format!(
                "fourfold strength must be >= 0, got {alpha}"
            )));
        }
        Ok(AnisotropyModel::Fourfold { alpha })
    }

    pub fn kfold(k: u32, alpha: f64) -> Result<Self> {
        if k == 0 {
            return Err(EscError::Config("k-fold symmetry requires k >= 1".into()));
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(EscError::Config(format!(
                "k-fold strength must lie in [0, 1) to keep gamma positive, got {alpha}"
            )));
        }
        Ok(AnisotropyModel::KFold { k, alpha })
    }

    pub fn riemannian(terms: &[(f64, f64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(EscError::Config(
                "riemannian model needs at least one (psi, delta) term".into(),
            ));
        }
        let terms = terms
            .iter()
            .map(|&(psi, delta)| MetricTerm::new(psi, delta))
            .collect::<Result<Vec<_>>>()?;
        Ok(AnisotropyModel::Riemannian { terms })
    }

    pub fn ellipsoidal_2d(r: [[f64; 2]; 2]) -> Result<Self> {
        let sym = (r[0][1] - r[1][0]).abs() <= 1e-12 * (1.0 + r[0][1].abs());
        let pd = r[0][0] > 0.0 && r[0][0] * r[1][1] - r[0][1] * r[1][0] > 0.0;
        if !sym || !pd {
            return Err(EscError::Config(
                "ellipsoidal matrix must be symmetric positive definite".into(),
            ));
        }
        let mut full = [[0.0; 3]; 3];
        for i in 0..2 {
            for j in 0..2 {
                full[i][j] = r[i][j];
            }
        }
        Ok(AnisotropyModel::Ellipsoidal { dim: 2, r: full })
    }

    pub fn ellipsoidal_3d(r: [[f64; 3]; 3]) -> Result<Self> {
        let mut sym = true;
        for i in 0..3 {
            for j in i + 1..3 {
                sym &= (r[i][j] - r[j][i]).abs() <= 1e-12 * (1.0 + r[i][j].abs());
            }
        }
        let m1 = r[0][0];
        let m2 = r[0][0] * r[1][1] - r[0][1] * r[1][0];
        let m3 = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        if !sym || !(m1 > 0.0 && m2 > 0.0 && m3 > 0.0) {
            return Err(EscError::Config(
                "ellipsoidal matrix must be symmetric positive definite".into(),
            ));
        }
        Ok(AnisotropyModel::Ellipsoidal { dim: 3, r })
    }

    /// Whether the model is defined in `dim` space dimensions.
    pub fn supports_dim(&self, dim: usize) -> bool {
        match self {
            AnisotropyModel::Isotropic | AnisotropyModel::Fourfold { .. } => true,
            AnisotropyModel::KFold { .. } | AnisotropyModel::Riemannian { .. } => dim == 2,
            AnisotropyModel::Ellipsoidal { dim: d, .. } => *d == dim,
        }
    }

    /// Splitting constant known to dominate the model's concavity margin.
    /// The Riemannian values step up as the regularization `delta` shrinks.
    pub fn recommended_a(&self) -> f64 {
        match self {
            AnisotropyModel::Riemannian { terms } => {
                let d2 = terms
                    .iter()
                    .map(|t| t.delta * t.delta)
                    .fold(f64::INFINITY, f64::min);
                if d2 >= 0.01 * (1.0 - 1e-9) {
                    10.0
                } else if d2 >= 0.001 * (1.0 - 1e-9) {
                    50.0
                } else {
                    100.0
                }
            }
            _ => 10.0,
        }
    }

    /// Density at a unit vector `n` (the zero vector is mapped to the value
    /// at the first coordinate direction; it is never consumed by the solver
    /// because the flux vanishes there).
    pub fn gamma(&self, n: &[f64]) -> f64 {
        let norm_sq: f64 = n.iter().map(|v| v * v).sum();
        debug_assert!(
            norm_sq == 0.0 || (norm_sq.sqrt() - 1.0).abs() <= 1e-10,
            "gamma expects a unit (or zero) vector, |n| = {}",
            norm_sq.sqrt()
        );
        if norm_sq == 0.0 {
            let mut e1 = [0.0; 3];
            e1[0] = 1.0;
            return self.gamma(&e1[..n.len()]);
        }
        match self {
            AnisotropyModel::Isotropic => 1.0,
            AnisotropyModel::Fourfold { alpha } => {
                let s4: f64 = n.iter().map(|v| v * v * v * v).sum();
                1.0 + alpha * (4.0 * s4 - 3.0)
            }
            AnisotropyModel::KFold { k, alpha } => {
                let theta = n[1].atan2(n[0]);
                1.0 + alpha * (*k as f64 * theta).cos()
            }
            AnisotropyModel::Riemannian { terms } => terms
                .iter()
                .map(|t| quad_form_2d(t.g, n).sqrt())
                .sum(),
            AnisotropyModel::Ellipsoidal { dim, r } => quad_form(r, n, *dim).sqrt(),
        }
    }

    /// Gradient of the model's extension of `gamma` off the unit sphere,
    /// evaluated at a unit vector. Components beyond the model dimension are
    /// zero.
    pub fn grad_gamma(&self, n: &[f64]) -> [f64; 3] {
        let mut out = [0.0; 3];
        match self {
            AnisotropyModel::Isotropic => {}
            AnisotropyModel::Fourfold { alpha } => {
                for (c, &v) in n.iter().enumerate() {
                    out[c] = 16.0 * alpha * v * v * v;
                }
            }
            AnisotropyModel::KFold { k, alpha } => {
                let theta = n[1].atan2(n[0]);
                let dg = -alpha * *k as f64 * (*k as f64 * theta).sin();
                out[0] = -dg * n[1];
                out[1] = dg * n[0];
            }
            AnisotropyModel::Riemannian { terms } => {
                for t in terms {
                    let q = quad_form_2d(t.g, n).sqrt();
                    out[0] += (t.g[0][0] * n[0] + t.g[0][1] * n[1]) / q;
                    out[1] += (t.g[1][0] * n[0] + t.g[1][1] * n[1]) / q;
                }
            }
            AnisotropyModel::Ellipsoidal { dim, r } => {
                let q = quad_form(r, n, *dim).sqrt();
                for i in 0..*dim {
                    let mut rn = 0.0;
                    for j in 0..*dim {
                        rn += r[i][j] * n[j];
                    }
                    out[i] = rn / q;
                }
            }
        }
        out
    }

    /// The flux vector of the energy gradient at one node. `p` carries the
    /// difference quotients (entries beyond `dim` ignored), `a` is the
    /// splitting constant; `p = 0` returns the zero vector, which keeps the
    /// discrete gradient continuous.
    pub fn flux(&self, p: [f64; 3], dim: usize, a: f64) -> [f64; 3] {
        let mut norm_sq = 0.0;
        for c in 0..dim {
            norm_sq += p[c] * p[c];
        }
        if norm_sq == 0.0 {
            return [0.0; 3];
        }
        let norm = norm_sq.sqrt();
        let mut n = [0.0; 3];
        for c in 0..dim {
            n[c] = p[c] / norm;
        }
        let gamma = self.gamma(&n[..dim]);
        let grad = self.grad_gamma(&n[..dim]);
        let mut ng = 0.0;
        for c in 0..dim {
            ng += n[c] * grad[c];
        }
        let mut out = [0.0; 3];
        let radial = gamma * gamma - a;
        for c in 0..dim {
            out[c] = radial * p[c] + gamma * norm * (grad[c] - ng * n[c]);
        }
        out
    }

    /// Angle parametrization of a 2D model: `gamma(theta)` with
    /// `tan(theta) = n_2/n_1`, plus first and second derivatives.
    pub fn theta_form(&self) -> Result<ThetaForm> {
        let inner = match self {
            AnisotropyModel::Isotropic => ThetaInner::Cosine { alpha: 0.0, k: 1.0 },
            AnisotropyModel::Fourfold { alpha } => ThetaInner::Cosine {
                alpha: *alpha,
                k: 4.0,
            },
            AnisotropyModel::KFold { k, alpha } => ThetaInner::Cosine {
                alpha: *alpha,
                k: *k as f64,
            },
            AnisotropyModel::Riemannian { terms } => {
                ThetaInner::Metric(terms.iter().map(|t| t.g).collect())
            }
            AnisotropyModel::Ellipsoidal { dim: 2, r } => {
                ThetaInner::Metric(vec![[[r[0][0], r[0][1]], [r[1][0], r[1][1]]]])
            }
            AnisotropyModel::Ellipsoidal { .. } => {
                return Err(EscError::Unsupported(
                    "theta parametrization needs a 2D model".into(),
                ))
            }
        };
        Ok(ThetaForm { inner })
    }
}

fn quad_form_2d(g: [[f64; 2]; 2], n: &[f64]) -> f64 {
    g[0][0] * n[0] * n[0] + (g[0][1] + g[1][0]) * n[0] * n[1] + g[1][1] * n[1] * n[1]
}

fn quad_form(r: &[[f64; 3]; 3], n: &[f64], dim: usize) -> f64 {
    let mut q = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            q += r[i][j] * n[i] * n[j];
        }
    }
    q
}

/// `gamma(theta)`, `gamma'(theta)`, `gamma''(theta)` for a 2D model.
pub struct ThetaForm {
    inner: ThetaInner,
}

enum ThetaInner {
    /// `1 + alpha cos(k theta)`.
    Cosine { alpha: f64, k: f64 },
    /// `sum sqrt(n(theta) . G n(theta))`.
    Metric(Vec<[[f64; 2]; 2]>),
}

impl ThetaForm {
    pub fn gamma(&self, theta: f64) -> f64 {
        match &self.inner {
            ThetaInner::Cosine { alpha, k } => 1.0 + alpha * (k * theta).cos(),
            ThetaInner::Metric(gs) => {
                let n = [theta.cos(), theta.sin()];
                gs.iter().map(|g| quad_form_2d(*g, &n).sqrt()).sum()
            }
        }
    }

    pub fn dgamma(&self, theta: f64) -> f64 {
        match &self.inner {
            ThetaInner::Cosine { alpha, k } => -alpha * k * (k * theta).sin(),
            ThetaInner::Metric(gs) => {
                let n = [theta.cos(), theta.sin()];
                let t = [-theta.sin(), theta.cos()];
                gs.iter()
                    .map(|g| {
                        let q = quad_form_2d(*g, &n);
                        let qp = 2.0 * bilinear_2d(*g, &t, &n);
                        qp / (2.0 * q.sqrt())
                    })
                    .sum()
            }
        }
    }

    pub fn ddgamma(&self, theta: f64) -> f64 {
        match &self.inner {
            ThetaInner::Cosine { alpha, k } => -alpha * k * k * (k * theta).cos(),
            ThetaInner::Metric(gs) => {
                let n = [theta.cos(), theta.sin()];
                let t = [-theta.sin(), theta.cos()];
                gs.iter()
                    .map(|g| {
                        let q = quad_form_2d(*g, &n);
                        let qp = 2.0 * bilinear_2d(*g, &t, &n);
                        let qpp = 2.0 * (quad_form_2d(*g, &t) - q);
                        qpp / (2.0 * q.sqrt()) - qp * qp / (4.0 * q.powf(1.5))
                    })
                    .sum()
            }
        }
    }
}

fn bilinear_2d(g: [[f64; 2]; 2], a: &[f64; 2], b: &[f64]) -> f64 {
    a[0] * (g[0][0] * b[0] + g[0][1] * b[1]) + a[1] * (g[1][0] * b[0] + g[1][1] * b[1])
}
