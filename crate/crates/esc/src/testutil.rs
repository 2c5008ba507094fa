//! Dense-matrix oracles and deterministic random fields for tests. Only
//! compiled for test builds; the solver itself never materializes operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{GridSpec, PhaseField};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Uniform random field in (-1, 1), reproducible from `seed`.
pub(crate) fn rng_field(spec: GridSpec, seed: u64) -> PhaseField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..spec.n_nodes())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    PhaseField::new(spec, values).unwrap()
}

/// Random low-frequency trigonometric field: smooth, with difference
/// quotients bounded away from zero at almost every node. Used by the
/// finite-difference gradient checks.
pub(crate) fn smooth_field(spec: GridSpec, seed: u64) -> PhaseField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = 2.0 * std::f64::consts::PI;
    let mut modes = Vec::new();
    for jx in 0..3i32 {
        for jy in 0..3i32 {
            if jx == 0 && jy == 0 {
                continue;
            }
            modes.push((
                jx as f64,
                jy as f64,
                rng.gen_range(-0.3..0.3),
                rng.gen_range(0.0..tau),
            ));
        }
    }
    PhaseField::from_fn(spec, |x| {
        modes
            .iter()
            .map(|&(jx, jy, amp, phase)| amp * (tau * (jx * x[0] + jy * x[1]) + phase).cos())
            .sum()
    })
}

/// Row-major dense square matrix, sized for grids of at most 8 per dimension.
#[derive(Clone, Debug)]
pub(crate) struct DenseMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let n = self.n * other.n;
        let mut out = DenseMatrix::zeros(n);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                let a = self.get(i1, j1);
                if a == 0.0 {
                    continue;
                }
                for i2 in 0..other.n {
                    for j2 in 0..other.n {
                        out.set(i1 * other.n + i2, j1 * other.n + j2, a * other.get(i2, j2));
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn dense_matvec(m: &DenseMatrix, v: &[f64]) -> Vec<f64> {
    let n = m.n;
    let mut out = vec![0.0; n];
    for i in 0..n {
        out[i] = dot(&m.data[i * n..(i + 1) * n], v);
    }
    out
}

/// One-dimensional periodic one-sided difference matrix of size `m`.
pub(crate) fn dense_diff_1d(m: usize) -> DenseMatrix {
    let h = 1.0 / m as f64;
    let mut d = DenseMatrix::zeros(m);
    for i in 0..m {
        d.set(i, i, -1.0 / h);
        d.set(i, (i + 1) % m, 1.0 / h);
    }
    d
}

/// The per-axis difference matrices on the flattened grid, built by Kronecker
/// products: in 2D `D_x = I (x) D`, `D_y = D (x) I`; in 3D
/// `D_x = I (x) I (x) D`, `D_y = I (x) D (x) I`, `D_z = D (x) I (x) I`.
pub(crate) fn dense_difference_matrices(spec: GridSpec) -> Vec<DenseMatrix> {
    let m = spec.m();
    let d = dense_diff_1d(m);
    let id = DenseMatrix::identity(m);
    match spec.dim() {
        2 => vec![id.kron(&d), d.kron(&id)],
        3 => {
            let id2 = id.kron(&id);
            vec![
                id2.kron(&d),
                id.kron(&d).kron(&id),
                d.kron(&id2),
            ]
        }
        _ => unreachable!(),
    }
}
