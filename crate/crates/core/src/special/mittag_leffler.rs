//! Two-parameter Mittag-Leffler function
//!
//! `E_{γ,δ}(z) = Σ_{k≥0} z^k / Γ(γk + δ)`, evaluated for complex `z` by one of
//! three routes:
//!
//! - the power series (compensated summation) for `|z| < 10` whenever its
//!   cancellation-aware error bound meets the target,
//! - the large-argument expansion `−Σ z^{-n}/Γ(δ−γn)`, optimally truncated, plus
//!   the exponential contributions of the poles of the Laplace transform, for
//!   `|z| ≥ 10` and `γ ≤ 2`,
//! - numerical Laplace inversion on a parabolic contour everywhere else.
//!
//! Every result carries the error estimate of the route that produced it.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_abs_rgamma, ln_gamma, rgamma};
use super::laplace;
use crate::error::{Error, Result};

/// Absolute accuracy target for `E_{γ,δ}`, scaled by `max(1, |E|)`.
pub const TARGET_ERROR: f64 = 1.0e-10;
/// Below this modulus the power series is attempted first.
pub const SERIES_RADIUS: f64 = 10.0;
/// From this modulus on the asymptotic expansion is attempted first.
pub const ASYMPTOTIC_RADIUS: f64 = 10.0;

const MAX_SERIES_TERMS: usize = 3000;
const MAX_ASYMPTOTIC_TERMS: usize = 4000;
// remainder of an optimally truncated expansion is of the order of the
// smallest term; this factor turns that into a bound
const TRUNCATION_SAFETY: f64 = 8.0;
// per-term relative error of z^k / Γ(γk+δ)
const TERM_REL_ERROR: f64 = 1.0e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    gamma_order: f64,
    delta_order: f64,
}

impl MLParams {
    pub fn new(gamma_order: f64, delta_order: f64) -> Result<Self> {
        if !(gamma_order > 0.0 && gamma_order.is_finite()) {
            return Err(Error::Domain(format!("gamma_order must be > 0, got {gamma_order}")));
        }
        if !(delta_order > 0.0 && delta_order.is_finite()) {
            return Err(Error::Domain(format!("delta_order must be > 0, got {delta_order}")));
        }
        Ok(Self {
            gamma_order,
            delta_order,
        })
    }

    /// One-parameter function `E_γ = E_{γ,1}`.
    pub fn one(gamma_order: f64) -> Result<Self> {
        Self::new(gamma_order, 1.0)
    }

    pub fn gamma_order(&self) -> f64 {
        self.gamma_order
    }

    pub fn delta_order(&self) -> f64 {
        self.delta_order
    }

    pub fn eval(&self, z: Complex64) -> Result<EvalResult> {
        mittag_leffler(*self, z)
    }

    /// Real-argument convenience wrapper returning only the value.
    pub fn eval_real(&self, x: f64) -> Result<f64> {
        Ok(mittag_leffler(*self, Complex64::new(x, 0.0))?.value.re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Series,
    Asymptotic,
    /// Laplace inversion on a parabolic contour.
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub est_abs_error: f64,
    pub regime: Regime,
}

impl EvalResult {
    fn meets_target(&self) -> bool {
        self.value.re.is_finite()
            && self.value.im.is_finite()
            && self.est_abs_error <= TARGET_ERROR * self.value.norm().max(1.0)
    }
}

/// Evaluate `E_{γ,δ}(z)`.
///
/// Fails with [`Error::NonConvergence`] (carrying the best attempt) if no
/// route reaches [`TARGET_ERROR`].
pub fn mittag_leffler(p: MLParams, z: Complex64) -> Result<EvalResult> {
    if z.re.is_nan() || z.im.is_nan() {
        return Err(Error::Domain("NaN argument".into()));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult {
            value: Complex64::new(rgamma(p.delta_order), 0.0),
            est_abs_error: 0.0,
            regime: Regime::Series,
        });
    }

    let mut best: Option<EvalResult> = None;
    let keep = |r: EvalResult, best: &mut Option<EvalResult>| {
        let better = match best {
            Some(b) => r.est_abs_error < b.est_abs_error || !b.value.re.is_finite(),
            None => true,
        };
        if better {
            *best = Some(r);
        }
    };

    let modulus = z.norm();
    if modulus < SERIES_RADIUS {
        let r = series(p, z);
        if r.meets_target() {
            return Ok(r);
        }
        keep(r, &mut best);
    } else if p.gamma_order <= 2.0 {
        if let Some(r) = asymptotic(p, z) {
            if r.meets_target() {
                return Ok(r);
            }
            keep(r, &mut best);
        }
    }

    if let Some(r) = integral(p, z) {
        if r.meets_target() {
            return Ok(r);
        }
        keep(r, &mut best);
    }

    match best {
        Some(b) => Err(Error::NonConvergence {
            best: b.value,
            est_abs_error: b.est_abs_error,
        }),
        None => Err(Error::NonConvergence {
            best: Complex64::new(f64::NAN, f64::NAN),
            est_abs_error: f64::INFINITY,
        }),
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Default)]
struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, x: Complex64) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.comp.im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

/// Power series with a cancellation-aware error estimate.
pub(crate) fn series(p: MLParams, z: Complex64) -> EvalResult {
    let (g, d) = (p.gamma_order, p.delta_order);
    let mut acc = CompensatedSum::default();
    let mut abs_sum = 0.0;
    let mut zpow = Complex64::new(1.0, 0.0);
    let ln_abs_z = z.norm().ln();
    let mut tail = f64::INFINITY;

    for k in 0..MAX_SERIES_TERMS {
        let arg = g * k as f64 + d;
        let term = if zpow.norm().is_finite() && arg < 160.0 {
            zpow * rgamma(arg)
        } else {
            // log form once z^k or Γ would leave double range
            let (sign, ln_r) = ln_abs_rgamma(arg);
            let mag = (k as f64 * ln_abs_z + ln_r).exp();
            Complex64::from_polar(sign * mag, k as f64 * z.arg())
        };
        let mag = term.norm();
        acc.add(term);
        abs_sum += mag;
        zpow *= z;

        // |z| Γ(a)/Γ(a+γ) decreases in a (log-convexity of Γ), so once the
        // next ratio drops below one the remainder is bounded geometrically
        let ratio = (ln_abs_z + ln_abs_rgamma(arg + g).1 - ln_abs_rgamma(arg).1).exp();
        if ratio < 1.0 {
            tail = mag * ratio / (1.0 - ratio);
            if tail <= 1.0e-17 * abs_sum || mag == 0.0 {
                break;
            }
        }
    }

    let value = acc.total();
    EvalResult {
        value,
        est_abs_error: tail + TERM_REL_ERROR * abs_sum,
        regime: Regime::Series,
    }
}

/// Poles of `s^{γ-δ}/(s^γ - z)` on the principal sheet, `-π < arg s ≤ π`.
fn transform_poles(gamma: f64, z: Complex64) -> Vec<Complex64> {
    let theta = z.arg();
    let radius = z.norm().powf(1.0 / gamma);
    let kmin = ((-PI * gamma - theta) / (2.0 * PI)).floor() as i64 - 1;
    let kmax = ((PI * gamma - theta) / (2.0 * PI)).ceil() as i64 + 1;
    (kmin..=kmax)
        .filter_map(|k| {
            let phase = (theta + 2.0 * PI * k as f64) / gamma;
            (phase > -PI && phase <= PI).then(|| Complex64::from_polar(radius, phase))
        })
        .collect()
}

/// Large-`|z|` expansion, optimally truncated, with pole contributions.
pub(crate) fn asymptotic(p: MLParams, z: Complex64) -> Option<EvalResult> {
    let (g, d) = (p.gamma_order, p.delta_order);
    if g > 2.0 {
        return None;
    }
    let ln_z = z.ln();
    let mut acc = CompensatedSum::default();
    let mut abs_sum = 0.0;
    let mut smallest = f64::INFINITY;
    let mut truncation = 0.0;

    for n in 1..=MAX_ASYMPTOTIC_TERMS {
        let x = d - g * n as f64;
        // truncation follows the envelope of |1/Γ(x)|, ignoring the sin(πx)
        // factor that makes individual terms accidentally tiny near poles
        let ln_envelope = if x > 0.0 {
            ln_abs_rgamma(x).1
        } else {
            ln_gamma(1.0 - x).unwrap_or(f64::INFINITY) - PI.ln()
        };
        let envelope = (ln_envelope - n as f64 * ln_z.re).exp();
        if envelope > smallest {
            truncation = smallest;
            break;
        }
        smallest = envelope;
        truncation = envelope;

        let (sign, ln_r) = ln_abs_rgamma(x);
        if sign != 0.0 {
            let mag = (ln_r - n as f64 * ln_z.re).exp();
            let term = -Complex64::from_polar(sign * mag, -(n as f64) * ln_z.im);
            acc.add(term);
            abs_sum += mag;
        }
        if envelope <= 1.0e-18 * abs_sum {
            break;
        }
    }
    if smallest.is_infinite() {
        truncation = 0.0;
    }

    let mut stokes_ambiguity = 0.0;
    for s in transform_poles(g, z) {
        let contrib = s.powf(1.0 - d) * s.exp() / g;
        if !(contrib.re.is_finite() && contrib.im.is_finite()) {
            return None;
        }
        // exp(s) inherits the absolute rounding error of s itself
        abs_sum += 4.0 * (1.0 + s.norm()) * contrib.norm();
        if s.arg().abs() > 7.0 * PI / 8.0 {
            stokes_ambiguity += contrib.norm();
        }
        acc.add(contrib);
    }

    Some(EvalResult {
        value: acc.total(),
        est_abs_error: TRUNCATION_SAFETY * truncation + stokes_ambiguity + 1.0e-15 * abs_sum,
        regime: Regime::Asymptotic,
    })
}

fn integral(p: MLParams, z: Complex64) -> Option<EvalResult> {
    let inv = laplace::invert(p.gamma_order, p.delta_order, z, 1.0e-15_f64.ln())?;
    Some(EvalResult {
        value: inv.value,
        est_abs_error: 10.0 * inv.log_tolerance.exp() * inv.value.norm().max(1.0),
        regime: Regime::Integral,
    })
}

/// Truncated large-argument expansion on the negative real axis:
/// `E_{γ,δ}(−x) ≈ −Σ_{n=1}^{n_terms} (−x)^{−n} / Γ(δ − γn)`.
///
/// `est_abs_error` is the magnitude of the first omitted term plus a bound on
/// the exponentially small pole contributions the algebraic sum leaves out.
pub fn ml_asymptotic(p: MLParams, x: f64, n_terms: usize) -> Result<EvalResult> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("asymptotic expansion needs x > 1, got {x}")));
    }
    if n_terms == 0 {
        return Err(Error::Domain("n_terms must be at least 1".into()));
    }
    let (g, d) = (p.gamma_order, p.delta_order);
    let term = |n: usize| -> f64 {
        // −(−x)^{−n}/Γ(δ−γn)
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        sign * x.powi(-(n as i32)) * rgamma(d - g * n as f64)
    };
    let value: f64 = (1..=n_terms).map(term).sum();
    let omitted = term(n_terms + 1).abs();

    let poles: f64 = transform_poles(g, Complex64::new(-x, 0.0))
        .into_iter()
        .map(|s| s.norm().powf(1.0 - d) * s.re.exp() / g)
        .sum();

    Ok(EvalResult {
        value: Complex64::new(value, 0.0),
        est_abs_error: omitted + poles,
        regime: Regime::Asymptotic,
    })
}
