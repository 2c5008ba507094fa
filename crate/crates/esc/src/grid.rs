//! Periodic cell-centered grid on the unit square/cube and the matrix-free
//! one-sided difference operators built on it.
//!
//! The grid has `m` cells per dimension with mesh width `h = 1/m` and cell
//! centers `x_i = (i + 1/2) h` (zero-based `i`). A field is stored as a flat
//! vector in lexicographic order, `k = i + m j` in 2D and `k = i + m j + m^2 l`
//! in 3D, with `x` fastest.
//!
//! The forward difference along each axis uses the periodic one-sided stencil
//! `(D u)_t = (u_{t+1} - u_t)/h` (last node wraps to the first); its adjoint is
//! `(D^T a)_t = (a_{t-1} - a_t)/h`. The discrete negative Laplacian is
//! `L = sum_c D_c^T D_c`, symmetric positive semidefinite with the constant
//! vector spanning its kernel.

use crate::error::{EscError, Result};

/// Geometry of a periodic cell-centered grid on `[0,1]^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    dim: usize,
    m: usize,
}

impl GridSpec {
    /// A `dim`-dimensional grid (`dim` in {2, 3}) with `m >= 2` cells per side.
    pub fn new(dim: usize, m: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(EscError::Config(format!("grid dim must be 2 or 3, got {dim}")));
        }
        if m < 2 {
            return Err(EscError::Config(format!("grid m must be >= 2, got {m}")));
        }
        Ok(GridSpec { dim, m })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cells per dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Mesh width `h = 1/m`.
    pub fn h(&self) -> f64 {
        1.0 / self.m as f64
    }

    /// Total number of nodes, `m^dim`.
    pub fn n_nodes(&self) -> usize {
        self.m.pow(self.dim as u32)
    }

    /// Coordinate of the `i`-th cell center along one axis.
    pub fn cell_center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.h()
    }

    /// Flat index of the node with per-axis indices `idx` (only the first
    /// `dim` entries are read).
    pub fn flat_index(&self, idx: [usize; 3]) -> usize {
        let mut k = idx[0];
        let mut stride = self.m;
        for c in 1..self.dim {
            k += idx[c] * stride;
            stride *= self.m;
        }
        k
    }

    /// Line decomposition of the grid along `axis`: returns `(stride, bases)`
    /// where each base starts a periodic line of `m` nodes spaced `stride`.
    fn lines(&self, axis: usize) -> (usize, Vec<usize>) {
        let m = self.m;
        let stride = m.pow(axis as u32);
        let mut bases = Vec::with_capacity(self.n_nodes() / m);
        match (self.dim, axis) {
            (2, 0) => bases.extend((0..m).map(|j| j * m)),
            (2, 1) => bases.extend(0..m),
            (3, 0) => {
                for l in 0..m {
                    for j in 0..m {
                        bases.push(j * m + l * m * m);
                    }
                }
            }
            (3, 1) => {
                for l in 0..m {
                    for i in 0..m {
                        bases.push(i + l * m * m);
                    }
                }
            }
            (3, 2) => {
                for j in 0..m {
                    for i in 0..m {
                        bases.push(i + j * m);
                    }
                }
            }
            _ => unreachable!("axis {axis} out of range for dim {}", self.dim),
        }
        (stride, bases)
    }
}

/// The order parameter on a grid: one value per node.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseField {
    spec: GridSpec,
    values: Vec<f64>,
}

impl PhaseField {
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.n_nodes() {
            return Err(EscError::DimensionMismatch {
                expected: spec.n_nodes(),
                got: values.len(),
            });
        }
        Ok(PhaseField { spec, values })
    }

    pub fn constant(spec: GridSpec, c: f64) -> Self {
        PhaseField {
            spec,
            values: vec![c; spec.n_nodes()],
        }
    }

    /// Build a field by evaluating `f` at every cell center. The argument
    /// carries the node coordinates, padded with zeros beyond `dim`.
    pub fn from_fn(spec: GridSpec, mut f: impl FnMut([f64; 3]) -> f64) -> Self {
        let m = spec.m;
        let mut values = Vec::with_capacity(spec.n_nodes());
        let planes = if spec.dim == 3 { m } else { 1 };
        for l in 0..planes {
            let z = if spec.dim == 3 { spec.cell_center(l) } else { 0.0 };
            for j in 0..m {
                let y = spec.cell_center(j);
                for i in 0..m {
                    values.push(f([spec.cell_center(i), y, z]));
                }
            }
        }
        PhaseField { spec, values }
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Discrete mass `1^T phi`.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Per-node difference quotients: `dim` components per node, stored as
/// component-contiguous planes (`component(c)[k]` is the `c`-component at
/// node `k`).
#[derive(Clone, Debug)]
pub struct GradientField {
    spec: GridSpec,
    comps: Vec<f64>,
}

impl GradientField {
    pub fn new(spec: GridSpec, comps: Vec<f64>) -> Result<Self> {
        if comps.len() != spec.dim() * spec.n_nodes() {
            return Err(EscError::DimensionMismatch {
                expected: spec.dim() * spec.n_nodes(),
                got: comps.len(),
            });
        }
        Ok(GradientField { spec, comps })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        GradientField {
            spec,
            comps: vec![0.0; spec.dim() * spec.n_nodes()],
        }
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn component(&self, c: usize) -> &[f64] {
        let n = self.spec.n_nodes();
        &self.comps[c * n..(c + 1) * n]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [f64] {
        let n = self.spec.n_nodes();
        &mut self.comps[c * n..(c + 1) * n]
    }

    /// The vector `p_k` at node `k`, padded with zeros beyond `dim`.
    pub fn node(&self, k: usize) -> [f64; 3] {
        let n = self.spec.n_nodes();
        let mut p = [0.0; 3];
        for c in 0..self.spec.dim() {
            p[c] = self.comps[c * n + k];
        }
        p
    }

    /// `sum_k |p_k|^2`, which equals `phi^T L phi` when this field is
    /// `forward_diff(phi)`.
    pub fn norm_sq_sum(&self) -> f64 {
        self.comps.iter().map(|v| v * v).sum()
    }
}

/// Forward periodic difference of `field` along every axis.
pub fn forward_diff(field: &PhaseField) -> GradientField {
    let spec = field.spec();
    let m = spec.m();
    let inv_h = m as f64;
    let phi = field.values();
    let mut out = GradientField::zeros(spec);
    for axis in 0..spec.dim() {
        let (stride, bases) = spec.lines(axis);
        let comp = out.component_mut(axis);
        for &base in &bases {
            for t in 0..m - 1 {
                let k = base + t * stride;
                comp[k] = (phi[k + stride] - phi[k]) * inv_h;
            }
            let last = base + (m - 1) * stride;
            comp[last] = (phi[base] - phi[last]) * inv_h;
        }
    }
    out
}

/// Adjoint of [`forward_diff`]: returns `sum_c D_c^T a_c`, so that
/// `<forward_diff(phi), a> = <phi, adjoint_diff(a)>` for all `phi`, `a`.
pub fn adjoint_diff(flux: &GradientField) -> PhaseField {
    let spec = flux.spec();
    let m = spec.m();
    let inv_h = m as f64;
    let mut out = PhaseField::constant(spec, 0.0);
    for axis in 0..spec.dim() {
        let (stride, bases) = spec.lines(axis);
        let a = flux.component(axis);
        let values = out.values_mut();
        for &base in &bases {
            let first = base;
            let wrap = base + (m - 1) * stride;
            values[first] += (a[wrap] - a[first]) * inv_h;
            for t in 1..m {
                let k = base + t * stride;
                values[k] += (a[k - stride] - a[k]) * inv_h;
            }
        }
    }
    out
}

/// Matrix-free application of the discrete negative Laplacian
/// `L = sum_c D_c^T D_c`.
pub fn apply_neg_laplacian(field: &PhaseField) -> PhaseField {
    let spec = field.spec();
    let m = spec.m();
    let inv_h2 = (m * m) as f64;
    let phi = field.values();
    let mut out = PhaseField::constant(spec, 0.0);
    for axis in 0..spec.dim() {
        let (stride, bases) = spec.lines(axis);
        let values = out.values_mut();
        for &base in &bases {
            let wrap = base + (m - 1) * stride;
            values[base] += (2.0 * phi[base] - phi[wrap] - phi[base + stride]) * inv_h2;
            for t in 1..m - 1 {
                let k = base + t * stride;
                values[k] += (2.0 * phi[k] - phi[k - stride] - phi[k + stride]) * inv_h2;
            }
            values[wrap] += (2.0 * phi[wrap] - phi[wrap - stride] - phi[base]) * inv_h2;
        }
    }
    out
}

/// Eigenvalues of `L` under the discrete Fourier transform, in the transform's
/// own flat layout: the entry for multi-index `(j_1, .., j_d)` is
/// `(4/h^2) sum_c sin^2(pi j_c / m)`. The zero mode is exactly 0 and the
/// largest entry is `4 dim / h^2` for even `m`.
pub fn laplacian_symbol(spec: GridSpec) -> Vec<f64> {
    let m = spec.m();
    let h = spec.h();
    let scale = 4.0 / (h * h);
    let axis: Vec<f64> = (0..m)
        .map(|j| {
            let s = (std::f64::consts::PI * j as f64 / m as f64).sin();
            s * s
        })
        .collect();
    let mut out = Vec::with_capacity(spec.n_nodes());
    if spec.dim() == 2 {
        for j in 0..m {
            for i in 0..m {
                out.push(scale * (axis[i] + axis[j]));
            }
        }
    } else {
        for l in 0..m {
            for j in 0..m {
                for i in 0..m {
                    out.push(scale * (axis[i] + axis[j] + axis[l]));
                }
            }
        }
    }
    out
}
