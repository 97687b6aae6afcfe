//! Series solution of the effective fractional Schrödinger equation in the
//! slab `r ∈ [−L, L]`,
//!
//! `2ik ∂_z^γ u = D_|r|^β u − ω_β u`, `u(z, ±L) = 0`,
//!
//! as `u(z, r) = Σ_m A_m E_γ(i c_m z^γ) sin(mπr/L)` with
//! `c_m = (ω_β + e_m)/(2k)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigenbox::odd_eigenvalue;
use crate::error::{Error, Result};
use crate::operators::{ComplexSamples, FractionalOrders, Grid1D};
use crate::special::{mittag_leffler, rgamma, sin_pi, MLParams};

/// Relative tolerance on the even part of an initial condition.
pub const PARITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabConfig {
    half_width: f64,
    wavenumber: f64,
    omega_beta: f64,
    orders: FractionalOrders,
    mode_cutoff: usize,
}

impl SlabConfig {
    pub fn new(
        half_width: f64,
        wavenumber: f64,
        omega_beta: f64,
        orders: FractionalOrders,
        mode_cutoff: usize,
    ) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Domain(format!("half width must be positive, got {half_width}")));
        }
        if wavenumber == 0.0 || !wavenumber.is_finite() {
            return Err(Error::Domain(format!("wavenumber must be finite and nonzero, got {wavenumber}")));
        }
        if !omega_beta.is_finite() {
            return Err(Error::Domain("omega_beta must be finite".into()));
        }
        if mode_cutoff == 0 {
            return Err(Error::Domain("mode cutoff must be at least 1".into()));
        }
        Ok(Self {
            half_width,
            wavenumber,
            omega_beta,
            orders,
            mode_cutoff,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    pub fn omega_beta(&self) -> f64 {
        self.omega_beta
    }

    pub fn orders(&self) -> FractionalOrders {
        self.orders
    }

    pub fn mode_cutoff(&self) -> usize {
        self.mode_cutoff
    }

    /// `e_m = (mπ/L)^β`.
    pub fn eigenvalue(&self, m: usize) -> f64 {
        odd_eigenvalue(m, self.half_width, self.orders.beta())
    }

    /// `c_m = (ω_β + e_m)/(2k)`.
    pub fn rate(&self, m: usize) -> f64 {
        (self.omega_beta + self.eigenvalue(m)) / (2.0 * self.wavenumber)
    }

    pub fn envelope(&self, m: usize, z0_value: Complex64) -> Result<ZEnvelope> {
        ZEnvelope::new(z0_value, self.rate(m), self.orders.gamma())
    }
}

/// `Z(z) = Z(0) E_γ(i c z^γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZEnvelope {
    pub z0_value: Complex64,
    pub rate: f64,
    pub gamma: f64,
}

impl ZEnvelope {
    /// `γ = 1` is admitted as the unitary limit.
    pub fn new(z0_value: Complex64, rate: f64, gamma: f64) -> Result<Self> {
        if !rate.is_finite() {
            return Err(Error::Domain(format!("rate must be finite, got {rate}")));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::Domain(format!("gamma must lie in (0, 1], got {gamma}")));
        }
        Ok(Self {
            z0_value,
            rate,
            gamma,
        })
    }

    fn z0_sq(&self) -> f64 {
        self.z0_value.norm_sqr()
    }
}

fn check_z(z: f64) -> Result<()> {
    if z >= 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("z must be finite and non-negative, got {z}")))
    }
}

fn ml_value(gamma: f64, delta: f64, arg: Complex64) -> Result<Complex64> {
    Ok(mittag_leffler(MLParams::new(gamma, delta)?, arg)?.value)
}

/// `Z(0) E_γ(i c z^γ)` by direct complex evaluation.
pub fn z_envelope(env: &ZEnvelope, z: f64) -> Result<Complex64> {
    check_z(z)?;
    let arg = Complex64::new(0.0, env.rate * z.powf(env.gamma));
    Ok(env.z0_value * ml_value(env.gamma, 1.0, arg)?)
}

/// `(Re Z, Im Z)` from the real decomposition
/// `E_γ(ix) = E_{2γ}(−x²) + i x E_{2γ,γ+1}(−x²)`, `x = c z^γ`.
pub fn z_envelope_parts(env: &ZEnvelope, z: f64) -> Result<(f64, f64)> {
    check_z(z)?;
    let x = env.rate * z.powf(env.gamma);
    let g2 = 2.0 * env.gamma;
    let neg = Complex64::new(-x * x, 0.0);
    let re = ml_value(g2, 1.0, neg)?.re;
    let im = if x == 0.0 {
        0.0
    } else {
        x * ml_value(g2, env.gamma + 1.0, neg)?.re
    };
    let zz = env.z0_value * Complex64::new(re, im);
    Ok((zz.re, zz.im))
}

/// `|Z(z)|²` from the decomposition.
pub fn norm_z(env: &ZEnvelope, z: f64) -> Result<f64> {
    let (re, im) = z_envelope_parts(env, z)?;
    Ok(re * re + im * im)
}

/// `|Z(0)|² [1 − 2c²z^{2γ}/Γ(2γ+1) + c²z^{2γ}/Γ²(γ+1)]`, valid for `c z^γ ≪ 1`.
pub fn norm_small_z(env: &ZEnvelope, z: f64) -> f64 {
    let g = env.gamma;
    let x2 = (env.rate * z.powf(g)).powi(2);
    env.z0_sq() * (1.0 - 2.0 * x2 * rgamma(2.0 * g + 1.0) + x2 * rgamma(g + 1.0).powi(2))
}

/// `|Z(0)|² c^{−2} z^{−2γ} / Γ²(1−γ)`, valid for `c z^γ ≫ 1`. Zero at `γ = 1`.
pub fn norm_large_z(env: &ZEnvelope, z: f64) -> f64 {
    let g = env.gamma;
    env.z0_sq() * rgamma(1.0 - g).powi(2) / (env.rate * env.rate * z.powf(2.0 * g))
}

/// Sine coefficients `A_1..A_M` of an odd initial condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeExpansion {
    config: SlabConfig,
    grid: Grid1D,
    coeffs: Vec<Complex64>,
    eigenvalues: Vec<f64>,
    truncation_energy: f64,
}

fn check_grid(cfg: &SlabConfig, grid: &Grid1D) -> Result<()> {
    if grid.half_width() != cfg.half_width() {
        return Err(Error::Grid(format!(
            "grid half width {} differs from slab half width {}",
            grid.half_width(),
            cfg.half_width()
        )));
    }
    if cfg.mode_cutoff() >= grid.n_points() / 2 {
        return Err(Error::Grid(format!(
            "mode cutoff {} aliases on {} points",
            cfg.mode_cutoff(),
            grid.n_points()
        )));
    }
    Ok(())
}

/// `sin(mπ r_j/L)` for `m = 1..=M`, row-major by mode.
fn sine_table(grid: &Grid1D, modes: usize) -> Vec<f64> {
    let n = grid.n_points();
    let mut t = Vec::with_capacity(modes * n);
    for m in 1..=modes {
        let mf = m as f64;
        t.extend((0..n).map(|j| sin_pi(mf * (2.0 * j as f64 / n as f64 - 1.0))));
    }
    t
}

impl ModeExpansion {
    /// Expansion with given coefficients; `coeffs.len()` must equal the cutoff.
    pub fn from_coeffs(config: SlabConfig, grid: Grid1D, coeffs: Vec<Complex64>) -> Result<Self> {
        check_grid(&config, &grid)?;
        if coeffs.len() != config.mode_cutoff() {
            return Err(Error::Domain(format!(
                "expected {} coefficients, got {}",
                config.mode_cutoff(),
                coeffs.len()
            )));
        }
        let eigenvalues = (1..=coeffs.len()).map(|m| config.eigenvalue(m)).collect();
        Ok(Self {
            config,
            grid,
            coeffs,
            eigenvalues,
            truncation_energy: 0.0,
        })
    }

    pub fn config(&self) -> &SlabConfig {
        &self.config
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Discarded energy `L Σ_{m>M} |A_m|²`, from the projection residual.
    pub fn truncation_energy(&self) -> f64 {
        self.truncation_energy
    }

    /// `L Σ_m |A_m|²`.
    pub fn retained_energy(&self) -> f64 {
        self.config.half_width() * self.coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>()
    }

    /// Index (1-based) of the largest `|A_m|`; ties go to the lowest mode.
    pub fn dominant_mode(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.norm() > self.coeffs[best].norm() {
                best = i;
            }
        }
        best + 1
    }
}

/// `A_m = (h/L) Σ_j u0(r_j) sin(mπ r_j/L)`, `m = 1..=M`.
///
/// Rejects initial data whose even part exceeds `1e-8·max|u0|` with
/// [`Error::Parity`]: the odd sine family cannot represent it.
pub fn project_initial(u0: &ComplexSamples, cfg: &SlabConfig) -> Result<ModeExpansion> {
    let grid = *u0.grid();
    check_grid(cfg, &grid)?;
    let even = u0.even_part_max();
    if even > PARITY_TOLERANCE * u0.max_abs() {
        return Err(Error::Parity { even_part: even });
    }
    let n = grid.n_points();
    let modes = cfg.mode_cutoff();
    let table = sine_table(&grid, modes);
    let w = grid.spacing() / cfg.half_width();
    let coeffs: Vec<Complex64> = (0..modes)
        .map(|i| {
            let row = &table[i * n..(i + 1) * n];
            let s: Complex64 = row.iter().zip(u0.values()).map(|(s, u)| u * s).sum();
            s * w
        })
        .collect();
    let mut exp = ModeExpansion::from_coeffs(*cfg, grid, coeffs)?;
    exp.truncation_energy = (u0.energy() - exp.retained_energy()).max(0.0);
    Ok(exp)
}

/// `u(z, r_j)` for each requested `z`, as `M`-term partial sums.
///
/// Work is spread over `(mode, z)` envelope evaluations and then over `z`
/// slices; every slot is written once, so the output is deterministic.
pub fn solve_field(
    cfg: &SlabConfig,
    expansion: &ModeExpansion,
    z_values: &[f64],
) -> Result<Vec<ComplexSamples>> {
    if expansion.config() != cfg {
        return Err(Error::Domain("expansion was built for a different slab".into()));
    }
    for &z in z_values {
        check_z(z)?;
    }
    let grid = *expansion.grid();
    let n = grid.n_points();
    let modes = expansion.coeffs().len();
    let table = sine_table(&grid, modes);

    let pairs: Vec<(usize, f64)> = z_values
        .iter()
        .flat_map(|&z| (1..=modes).map(move |m| (m, z)))
        .collect();
    let envelopes: Vec<Complex64> = pairs
        .par_iter()
        .map(|&(m, z)| {
            let a = expansion.coeffs()[m - 1];
            if a == Complex64::new(0.0, 0.0) {
                return Ok(a);
            }
            z_envelope(&cfg.envelope(m, a)?, z)
        })
        .collect::<Result<_>>()?;

    Ok(envelopes
        .par_chunks(modes)
        .map(|amps| {
            let mut field = vec![Complex64::new(0.0, 0.0); n];
            for (i, amp) in amps.iter().enumerate() {
                if *amp == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &table[i * n..(i + 1) * n];
                for (f, s) in field.iter_mut().zip(row) {
                    *f += amp * s;
                }
            }
            ComplexSamples::new(grid, field).expect("one value per grid point")
        })
        .collect())
}

/// `E_α(ω t^α)`, the single-mode time factor.
pub fn time_envelope(omega: f64, alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be finite and non-negative, got {t}")));
    }
    MLParams::one(alpha)?.eval_real(omega * t.powf(alpha))
}
