//! Discrete Fourier transforms of grid fields, used to apply functions of the
//! Laplacian symbol exactly in transform space.
//!
//! Forward transforms are unnormalized; the inverse carries the `1/N` factor.
//! Only ratios of transformed quantities enter any solve, so the convention
//! never leaks out of this module.

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::grid::{laplacian_symbol, GridSpec, PhaseField};

/// Reusable FFT plans and scratch space for one grid.
pub struct FftWorkspace {
    spec: GridSpec,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    line: Vec<Complex<f64>>,
    symbol: Vec<f64>,
}

impl FftWorkspace {
    pub fn new(spec: GridSpec) -> Self {
        let mut planner = FftPlanner::new();
        let m = spec.m();
        FftWorkspace {
            spec,
            forward: planner.plan_fft_forward(m),
            inverse: planner.plan_fft_inverse(m),
            line: vec![Complex::default(); m],
            symbol: laplacian_symbol(spec),
        }
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    /// Laplacian symbol in the transform's flat layout.
    pub fn symbol(&self) -> &[f64] {
        &self.symbol
    }

    fn transform_axes(&mut self, data: &mut [Complex<f64>], inverse: bool) {
        let m = self.spec.m();
        let n = self.spec.n_nodes();
        let plan = if inverse { &self.inverse } else { &self.forward };
        for axis in 0..self.spec.dim() {
            let stride = m.pow(axis as u32);
            if stride == 1 {
                for chunk in data.chunks_exact_mut(m) {
                    plan.process(chunk);
                }
            } else {
                let n_lines = n / m;
                for line_idx in 0..n_lines {
                    // Bases enumerate all index combinations of the non-axis
                    // dimensions; for stride s the base pattern repeats every
                    // s entries within blocks of s*m.
                    let block = line_idx / stride;
                    let offset = line_idx % stride;
                    let base = block * stride * m + offset;
                    for t in 0..m {
                        self.line[t] = data[base + t * stride];
                    }
                    plan.process(&mut self.line);
                    for t in 0..m {
                        data[base + t * stride] = self.line[t];
                    }
                }
            }
        }
    }

    /// Forward DFT of a real field (unnormalized).
    pub fn forward(&mut self, field: &PhaseField) -> Vec<Complex<f64>> {
        let mut data: Vec<Complex<f64>> = field
            .values()
            .iter()
            .map(|&v| Complex::new(v, 0.0))
            .collect();
        self.transform_axes(&mut data, false);
        data
    }

    /// Inverse DFT back to a real field (applies the `1/N` normalization and
    /// drops the residual imaginary parts).
    pub fn inverse(&mut self, mut data: Vec<Complex<f64>>) -> PhaseField {
        self.transform_axes(&mut data, true);
        let scale = 1.0 / self.spec.n_nodes() as f64;
        let values = data.iter().map(|c| c.re * scale).collect();
        PhaseField::new(self.spec, values).expect("transform preserves length")
    }

    /// Solve `(I + tau (a eps^2 L + b I)) y = x` exactly in transform space.
    /// The per-mode denominator `1 + tau b + tau a eps^2 lambda_j` is at
    /// least 1 for nonnegative parameters.
    pub fn solve_shifted(&mut self, x: &PhaseField, tau: f64, a: f64, b: f64, eps: f64) -> PhaseField {
        let mut spec_data = self.forward(x);
        let c = tau * a * eps * eps;
        for (v, &lam) in spec_data.iter_mut().zip(&self.symbol) {
            *v /= 1.0 + tau * b + c * lam;
        }
        self.inverse(spec_data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{apply_neg_laplacian, GridSpec};
    use crate::testutil::rng_field;

    #[test]
    fn roundtrip_recovers_field() {
        for spec in [GridSpec::new(2, 16).unwrap(), GridSpec::new(3, 8).unwrap()] {
            let mut fft = FftWorkspace::new(spec);
            let phi = rng_field(spec, 5);
            let hat = fft.forward(&phi);
            let back = fft.inverse(hat);
            for (a, b) in phi.values().iter().zip(back.values()) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn symbol_reproduces_stencil_laplacian() {
        for spec in [GridSpec::new(2, 12).unwrap(), GridSpec::new(3, 6).unwrap()] {
            let mut fft = FftWorkspace::new(spec);
            let phi = rng_field(spec, 9);
            let mut hat = fft.forward(&phi);
            for (v, &lam) in hat.iter_mut().zip(fft.symbol()) {
                *v *= lam;
            }
            let via_symbol = fft.inverse(hat);
            let direct = apply_neg_laplacian(&phi);
            let scale = direct
                .values()
                .iter()
                .map(|v| v.abs())
                .fold(1.0, f64::max);
            for (a, b) in via_symbol.values().iter().zip(direct.values()) {
                assert!((a - b).abs() <= 1e-11 * scale, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn shifted_solve_zero_mode() {
        let spec = GridSpec::new(2, 8).unwrap();
        let mut fft = FftWorkspace::new(spec);
        let x = PhaseField::constant(spec, 3.0);
        let y = fft.solve_shifted(&x, 0.5, 10.0, 2.0, 0.02);
        for v in y.values() {
            assert!((v - 3.0 / (1.0 + 0.5 * 2.0)).abs() <= 1e-13);
        }
    }
}
