//! Gamma function via the Lanczos approximation (g = 7, nine coefficients),
//! with reflection for arguments below one half.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument for which Γ(x) is finite in double precision.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

fn lanczos_sum(x: f64) -> f64 {
    // x is already shifted by -1
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    if r == 0.0 {
        return 0.0;
    }
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(πx)`, exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    if r.abs() == 0.5 {
        return 0.0;
    }
    let c = (PI * r).cos();
    if (n as i64) % 2 == 0 {
        c
    } else {
        -c
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x) for real `x`.
///
/// Positive integers up to 30 are returned exactly as factorials.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x == x.floor() && x > 0.0 && x <= 30.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma_unchecked(1.0 - x));
    }
    if x > GAMMA_MAX_ARG {
        return f64::INFINITY;
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let a = lanczos_sum(xm);
    // split the power so that t^(x-1/2) does not overflow before exp(-t) damps it
    let half = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * a
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok((PI / (sin_pi(x) * gamma_unchecked(1.0 - x))).ln());
    }
    if x < 20.0 {
        return Ok(gamma_unchecked(x).ln());
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    Ok(HALF_LN_TWO_PI + (xm + 0.5) * t.ln() - t + lanczos_sum(xm).ln())
}

/// 1/Γ(x), an entire function: zero at the poles of Γ, finite everywhere.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > GAMMA_MAX_ARG {
        return (-ln_gamma(x).unwrap_or(f64::INFINITY)).exp();
    }
    if x < -GAMMA_MAX_ARG + 2.0 {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π, with Γ(1-x) taken in log form
        let lg = ln_gamma(1.0 - x).unwrap_or(f64::INFINITY);
        return sin_pi(x) / PI * lg.exp();
    }
    1.0 / gamma_unchecked(x)
}

/// Sign and natural log of |1/Γ(x)|. The sign is zero at the poles of Γ.
pub fn ln_abs_rgamma(x: f64) -> (f64, f64) {
    if is_nonpositive_integer(x) {
        return (0.0, f64::NEG_INFINITY);
    }
    if x > 0.0 {
        return (1.0, -ln_gamma(x).unwrap_or(f64::INFINITY));
    }
    let s = sin_pi(x);
    let lg = ln_gamma(1.0 - x).unwrap_or(f64::INFINITY);
    (s.signum(), (s.abs() / PI).ln() + lg)
}
