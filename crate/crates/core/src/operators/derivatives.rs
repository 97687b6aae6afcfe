//! Fractional derivatives on `[0, x]` with lower terminal zero.
//!
//! - Caputo: L1 scheme (piecewise-linear `f`), error `O(h^{2−α})` for smooth `f`.
//! - Riemann-Liouville: product-trapezoid fractional integral `I^{n−α} f`
//!   followed by a second-order backward difference of order `n`.
//! - Grünwald-Letnikov: unshifted weights, first order; kept as an
//!   independent cross-check of the other two.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::special::{gamma_fn, rgamma};

/// `(k+1)^p − k^p` without cancellation for large `k`.
fn forward_power_diff(k: f64, p: f64) -> f64 {
    if k == 0.0 {
        1.0
    } else {
        k.powf(p) * (p * (1.0 / k).ln_1p()).exp_m1()
    }
}

fn uniform_nodes(x: f64, h: f64) -> Result<(usize, f64)> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("evaluation point must be positive, got {x}")));
    }
    if !(h > 0.0 && h <= x / 8.0) {
        return Err(Error::Domain(format!("step must satisfy 0 < h <= x/8, got h={h}, x={x}")));
    }
    let n = (x / h).round();
    let n = if ((n * h) - x).abs() <= 1e-9 * x { n } else { (x / h).ceil() };
    let n = n as usize;
    Ok((n, x / n as f64))
}

fn check_caputo_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("Caputo order must lie in (0, 1), got {alpha}")))
    }
}

/// L1 weights `b_k = (k+1)^{1−α} − k^{1−α}`, `k = 0..n`.
pub fn l1_weights(alpha: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| forward_power_diff(k as f64, 1.0 - alpha)).collect()
}

/// Caputo derivative of order `α ∈ (0,1)` of `f` at `x`, L1 scheme.
///
/// The step is adjusted to `x/⌈x/h⌉` so that `x` is a node.
pub fn caputo_deriv<F: Fn(f64) -> f64>(f: F, alpha: f64, x: f64, h: f64) -> Result<f64> {
    check_caputo_order(alpha)?;
    let (n, step) = uniform_nodes(x, h)?;
    let samples: Vec<f64> = (0..=n).map(|j| f(j as f64 * step)).collect();
    let weights = l1_weights(alpha, n);
    let acc: f64 = (0..n)
        .map(|j| weights[n - 1 - j] * (samples[j + 1] - samples[j]))
        .sum();
    Ok(acc * step.powf(-alpha) * rgamma(2.0 - alpha))
}

/// L1 Caputo derivative at every node of a uniformly sampled function
/// (`values[j] = f(j h)`). The entry at node 0 is left at zero.
pub fn caputo_l1_samples<T>(values: &[T], alpha: f64, h: f64) -> Result<Vec<T>>
where
    T: Copy + Default + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    check_caputo_order(alpha)?;
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let n = values.len();
    let weights = l1_weights(alpha, n.saturating_sub(1));
    let scale = h.powf(-alpha) * rgamma(2.0 - alpha);
    let diffs: Vec<T> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let mut out = vec![T::default(); n];
    for m in 1..n {
        let mut acc = T::default();
        for j in 0..m {
            acc = acc + diffs[j] * weights[m - 1 - j];
        }
        out[m] = acc * scale;
    }
    Ok(out)
}

/// Fractional integral `I^ν f` at nodes `m = 0..=n` via product trapezoid.
fn fractional_integral_at(samples: &[f64], nu: f64, step: f64, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let p = nu + 1.0;
    let mf = m as f64;
    // a_{0,m} = (m−1)^{ν+1} − (m−1−ν) m^ν
    let a0 = (mf - 1.0).powf(p) - (mf - 1.0 - nu) * mf.powf(nu);
    let mut acc = a0 * samples[0] + samples[m];
    for j in 1..m {
        // second difference of k^{ν+1} around k = m − j
        let k = (m - j) as f64;
        let a = forward_power_diff(k, p) - forward_power_diff(k - 1.0, p);
        acc += a * samples[j];
    }
    acc * step.powf(nu) * rgamma(nu + 2.0)
}

/// Riemann-Liouville derivative of order `α ∈ (0,1) ∪ (1,2)` at `x`.
pub fn rl_deriv<F: Fn(f64) -> f64>(f: F, alpha: f64, x: f64, h: f64) -> Result<f64> {
    let order = if alpha > 0.0 && alpha < 1.0 {
        1
    } else if alpha > 1.0 && alpha < 2.0 {
        2
    } else {
        return Err(Error::Domain(format!("RL order must lie in (0,1) or (1,2), got {alpha}")));
    };
    let (n, step) = uniform_nodes(x, h)?;
    let nu = order as f64 - alpha;
    let samples: Vec<f64> = (0..=n).map(|j| f(j as f64 * step)).collect();
    let i = |back: usize| fractional_integral_at(&samples, nu, step, n - back);
    let d = match order {
        1 => (3.0 * i(0) - 4.0 * i(1) + i(2)) / (2.0 * step),
        _ => (2.0 * i(0) - 5.0 * i(1) + 4.0 * i(2) - i(3)) / (step * step),
    };
    Ok(d)
}

/// Caputo minus Riemann-Liouville boundary terms:
/// `Σ_{k<n} f^{(k)}(0⁺) x^{k−α} / Γ(k−α+1)` for given initial derivatives.
pub fn rl_caputo_boundary_terms(initial_derivs: &[f64], alpha: f64, x: f64) -> f64 {
    initial_derivs
        .iter()
        .enumerate()
        .map(|(k, d)| d * x.powf(k as f64 - alpha) * rgamma(k as f64 - alpha + 1.0))
        .sum()
}

/// Grünwald-Letnikov derivative at every node of `samples` (`f(j h)`):
/// `h^{−α} Σ_{j≤i} w_j f_{i−j}`, `w_0 = 1`, `w_j = w_{j−1}(1 − (α+1)/j)`.
pub fn gl_deriv(samples: &[f64], alpha: f64, h: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain(format!("GL order must lie in (0, 2), got {alpha}")));
    }
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let n = samples.len();
    let mut w = Vec::with_capacity(n);
    let mut wj = 1.0;
    for j in 0..n {
        if j > 0 {
            wj *= 1.0 - (alpha + 1.0) / j as f64;
        }
        w.push(wj);
    }
    let scale = h.powf(-alpha);
    Ok((0..n)
        .map(|i| scale * (0..=i).map(|j| w[j] * samples[i - j]).sum::<f64>())
        .collect())
}

/// `Γ(p+1)/Γ(p+1−α) x^{p−α}`, the power rule for `D^α x^p`.
pub fn power_rule(p: f64, alpha: f64, x: f64) -> Result<f64> {
    Ok(gamma_fn(p + 1.0)? * rgamma(p + 1.0 - alpha) * x.powf(p - alpha))
}
