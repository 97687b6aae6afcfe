use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform periodic grid on `[−L, L)`: `r_j = −L + j·h`, `h = 2L/N`.
///
/// The wall `r = +L` is the periodic image of `r_0 = −L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    half_width: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Grid(format!("half width must be positive, got {half_width}")));
        }
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::Grid(format!(
                "point count must be a power of two >= 8, got {n_points}"
            )));
        }
        Ok(Self {
            half_width,
            n_points,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n_points as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.point(j))
    }

    /// Index of the sample at `−r_j` under the periodic identification.
    pub fn mirror_index(&self, j: usize) -> usize {
        (self.n_points - j) % self.n_points
    }

    /// Angular wavenumber of DFT bin `j`, symmetric ordering `n ∈ [−N/2, N/2)`.
    pub fn wavenumber(&self, j: usize) -> f64 {
        let n = self.n_points as i64;
        let idx = j as i64;
        let signed = if idx < n / 2 { idx } else { idx - n };
        std::f64::consts::PI * signed as f64 / self.half_width
    }
}

/// Complex samples of a function on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSamples {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl ComplexSamples {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::Grid(format!(
                "expected {} samples, got {}",
                grid.n_points(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Grid1D, f: F) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn from_real_fn<F: Fn(f64) -> f64>(grid: Grid1D, f: F) -> Self {
        Self::from_fn(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Sample at the wall `r = −L` (equivalently `+L`).
    pub fn wall_value(&self) -> Complex64 {
        self.values[0]
    }

    /// Discrete `L²` norm `sqrt(h Σ |f_j|²)`.
    pub fn l2_norm(&self) -> f64 {
        self.energy().sqrt()
    }

    /// `h Σ |f_j|²`.
    pub fn energy(&self) -> f64 {
        self.grid.spacing() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    /// Discrete inner product `h Σ conj(f_j) g_j`.
    pub fn inner(&self, other: &ComplexSamples) -> Complex64 {
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum();
        s * self.grid.spacing()
    }

    pub fn max_abs_diff(&self, other: &ComplexSamples) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: Complex64) -> ComplexSamples {
        ComplexSamples {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    /// Largest magnitude of the even part `(f(r) + f(−r))/2`.
    pub fn even_part_max(&self) -> f64 {
        (0..self.values.len())
            .map(|j| 0.5 * (self.values[j] + self.values[self.grid.mirror_index(j)]).norm())
            .fold(0.0, f64::max)
    }
}
