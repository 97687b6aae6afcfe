//! Eigenpairs of the fractional Hamiltonian in the infinite well `[−L, L]`.
//!
//! Modes are sampled from the exact dyadic argument `r_j/L = −1 + 2j/N`
//! through `sin_pi`/`cos_pi`, so wall zeros are exact and the rounding
//! in each sample is at most half an ulp. Eigenvalues always come from
//! the analytic formula; the FFT path only verifies them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::{check_beta, ComplexSamples, Grid1D, RieszOperator};
use crate::special::{cos_pi, sin_pi};

/// Wall tolerance used to lift the degeneracy of the shifted pair.
pub const WALL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
    ShiftedCos,
    ShiftedSin,
}

impl Parity {
    pub fn label(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::ShiftedCos => "c",
            Parity::ShiftedSin => "s",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenMode {
    pub m: usize,
    pub parity: Parity,
    pub eigenvalue: f64,
    pub samples: ComplexSamples,
}

/// `(mπ/L)^β`, the spectrum of the odd and shifted families.
pub fn odd_eigenvalue(m: usize, half_width: f64, beta: f64) -> f64 {
    (m as f64 * std::f64::consts::PI / half_width).powf(beta)
}

/// `((2m+1)π/(2L))^β`.
pub fn even_eigenvalue(m: usize, half_width: f64, beta: f64) -> f64 {
    ((2 * m + 1) as f64 * std::f64::consts::PI / (2.0 * half_width)).powf(beta)
}

fn sample(grid: Grid1D, shape: impl Fn(f64) -> f64) -> ComplexSamples {
    let n = grid.n_points();
    let amp = 1.0 / grid.half_width().sqrt();
    let values = (0..n)
        .map(|j| {
            let u = 2.0 * j as f64 / n as f64 - 1.0;
            Complex64::new(amp * shape(u), 0.0)
        })
        .collect();
    ComplexSamples::new(grid, values).expect("one sample per grid point")
}

fn check_index(m: usize, min: usize) -> Result<()> {
    if m < min {
        Err(Error::Domain(format!("mode index must be >= {min}, got {m}")))
    } else {
        Ok(())
    }
}

/// `Ψ_m^odd(r) = L^{−1/2} sin(mπr/L)`.
pub fn odd_mode(m: usize, grid: Grid1D, beta: f64) -> Result<EigenMode> {
    check_index(m, 1)?;
    check_beta(beta)?;
    let mf = m as f64;
    Ok(EigenMode {
        m,
        parity: Parity::Odd,
        eigenvalue: odd_eigenvalue(m, grid.half_width(), beta),
        samples: sample(grid, |u| sin_pi(mf * u)),
    })
}

/// `Ψ_{2m+1}^even(r) = L^{−1/2} cos((2m+1)πr/(2L))`. Not 2L-periodic, so
/// the spectral operator does not reproduce its eigenvalue.
pub fn even_mode(m: usize, grid: Grid1D, beta: f64) -> Result<EigenMode> {
    check_beta(beta)?;
    let q = (2 * m + 1) as f64;
    Ok(EigenMode {
        m,
        parity: Parity::Even,
        eigenvalue: even_eigenvalue(m, grid.half_width(), beta),
        samples: sample(grid, |u| cos_pi(0.5 * q * u)),
    })
}

/// `(Ψ_m^c, Ψ_m^s)` with `Ψ^{c,s}(r) = L^{−1/2} {cos, sin}(mπ(2r+L)/(2L))`.
pub fn degenerate_pair(m: usize, grid: Grid1D) -> Result<(ComplexSamples, ComplexSamples)> {
    check_index(m, 1)?;
    let mf = m as f64;
    // mπ(2r+L)/(2L) = π·m(u + 1/2) with u = r/L
    Ok((
        sample(grid, |u| cos_pi(mf * (u + 0.5))),
        sample(grid, |u| sin_pi(mf * (u + 0.5))),
    ))
}

/// Both members of the degenerate pair as modes sharing `(mπ/L)^β`.
pub fn degenerate_modes(m: usize, grid: Grid1D, beta: f64) -> Result<(EigenMode, EigenMode)> {
    check_beta(beta)?;
    let (c, s) = degenerate_pair(m, grid)?;
    let e = odd_eigenvalue(m, grid.half_width(), beta);
    let mode = |parity, samples| EigenMode {
        m,
        parity,
        eigenvalue: e,
        samples,
    };
    Ok((mode(Parity::ShiftedCos, c), mode(Parity::ShiftedSin, s)))
}

/// The member of the pair that vanishes at `r = ±L`.
///
/// Fails with [`Error::Selection`] when neither member vanishes, and also
/// when both do, since either outcome means the pair was built wrongly.
pub fn select_by_boundary(
    pair: (ComplexSamples, ComplexSamples),
    m: usize,
) -> Result<ComplexSamples> {
    let (c, s) = pair;
    let c_zero = c.wall_value().norm() <= WALL_TOLERANCE;
    let s_zero = s.wall_value().norm() <= WALL_TOLERANCE;
    match (c_zero, s_zero) {
        (true, false) => Ok(c),
        (false, true) => Ok(s),
        _ => Err(Error::Selection { m }),
    }
}

/// `‖H f − e f‖₂ / ‖f‖₂` with the `|k|^β` symbol.
pub fn eigen_residual(samples: &ComplexSamples, beta: f64, eigenvalue: f64) -> Result<f64> {
    let op = RieszOperator::new(*samples.grid(), beta)?;
    eigen_residual_with(&op, samples, eigenvalue)
}

/// [`eigen_residual`] against a prepared (possibly non-standard) operator.
pub fn eigen_residual_with(
    op: &RieszOperator,
    samples: &ComplexSamples,
    eigenvalue: f64,
) -> Result<f64> {
    let norm = samples.l2_norm();
    if norm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let hf = op.apply(samples)?;
    let diff: Vec<Complex64> = hf
        .values()
        .iter()
        .zip(samples.values())
        .map(|(a, b)| a - b * eigenvalue)
        .collect();
    Ok(ComplexSamples::new(*samples.grid(), diff)?.l2_norm() / norm)
}

/// `H f / e`, to be compared pointwise against `f`.
pub fn operator_over_eigenvalue(
    op: &RieszOperator,
    samples: &ComplexSamples,
    eigenvalue: f64,
) -> Result<ComplexSamples> {
    Ok(op.apply(samples)?.scaled(Complex64::new(1.0 / eigenvalue, 0.0)))
}
