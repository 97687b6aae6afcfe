use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use super::ddfft::DdFft;
use super::grid::{ComplexSamples, Grid1D};
use super::orders::check_beta;
use crate::error::{Error, Result};

/// Spectral Riesz operator `H` on a periodic grid: forward DFT, multiply
/// by `|k_n|^β`, inverse DFT with `1/N`. Eigenvalues on `sin(mπr/L)` are
/// `+(mπ/L)^β`.
///
/// The forward transform runs in double-double precision (see `ddfft`);
/// the inverse uses `rustfft`.
#[derive(Clone)]
pub struct RieszOperator {
    grid: Grid1D,
    beta: f64,
    symbol: Vec<f64>,
    forward: DdFft,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for RieszOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RieszOperator")
            .field("grid", &self.grid)
            .field("beta", &self.beta)
            .finish_non_exhaustive()
    }
}

impl RieszOperator {
    pub fn new(grid: Grid1D, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(Self::with_symbol(grid, beta, |k| k.abs().powf(beta)))
    }

    /// Same plumbing with an arbitrary symbol `σ(k)`. Used to inject
    /// deliberately wrong symbols when checking that verification can fail.
    pub fn with_symbol<S: Fn(f64) -> f64>(grid: Grid1D, beta: f64, symbol: S) -> Self {
        let n = grid.n_points();
        let mut planner = FftPlanner::new();
        Self {
            grid,
            beta,
            symbol: (0..n).map(|j| symbol(grid.wavenumber(j))).collect(),
            forward: DdFft::new(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn apply(&self, f: &ComplexSamples) -> Result<ComplexSamples> {
        if *f.grid() != self.grid {
            return Err(Error::Grid("samples live on a different grid".into()));
        }
        let n = self.grid.n_points();
        let mut buf = self.forward.forward(f.values());
        let inv_n = 1.0 / n as f64;
        for (v, s) in buf.iter_mut().zip(&self.symbol) {
            *v *= s * inv_n;
        }
        self.inverse.process(&mut buf);
        ComplexSamples::new(self.grid, buf)
    }
}

/// `H f` with symbol `|k|^β`; a one-shot convenience over [`RieszOperator`].
pub fn riesz_apply(f: &ComplexSamples, beta: f64) -> Result<ComplexSamples> {
    RieszOperator::new(*f.grid(), beta)?.apply(f)
}

/// Periodic three-point Laplacian `−(f_{j+1} − 2f_j + f_{j−1})/h²`, the
/// finite-difference counterpart of `β = 2`.
pub fn second_difference(f: &ComplexSamples) -> ComplexSamples {
    let v = f.values();
    let n = v.len();
    let h2 = f.grid().spacing().powi(2);
    let out = (0..n)
        .map(|j| -(v[(j + 1) % n] - 2.0 * v[j] + v[(j + n - 1) % n]) / h2)
        .collect();
    ComplexSamples::new(*f.grid(), out).expect("same length")
}
