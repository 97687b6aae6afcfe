//! Mittag-Leffler evaluation by numerical inversion of its Laplace transform.
//!
//! `E_{γ,δ}(z)` is the inverse transform of `s^{γ-δ} / (s^γ - z)` at `t = 1`.
//! The Bromwich line is deformed into a parabola `s(u) = μ (1 + iu)^2`, the
//! integral is taken with the trapezoidal rule, and poles lying to the right of
//! the contour are added back as residues. Contour parameters (μ, h, N) are
//! chosen per admissible region between consecutive singularities, following
//! Garrappa (SIAM J. Numer. Anal. 53, 2015).

use std::f64::consts::PI;

use num_complex::Complex64;

const LOG_EPS: f64 = -36.043_653_389_117_154; // ln(f64::EPSILON)
const MAX_NODES: f64 = 200.0;

#[derive(Debug, Clone, Copy)]
struct Contour {
    mu: f64,
    h: f64,
    n: f64,
}

impl Contour {
    const NONE: Contour = Contour {
        mu: 0.0,
        h: 0.0,
        n: f64::INFINITY,
    };
}

/// Result of one inversion: the value and the log-tolerance actually reached.
pub(crate) struct Inversion {
    pub value: Complex64,
    pub log_tolerance: f64,
}

pub(crate) fn invert(gamma: f64, delta: f64, z: Complex64, log_tolerance: f64) -> Option<Inversion> {
    let t = 1.0;
    let theta = z.arg();
    let kmin = (-gamma / 2.0 - theta / (2.0 * PI)).ceil() as i64;
    let kmax = (gamma / 2.0 - theta / (2.0 * PI)).floor() as i64;
    let radius = z.norm().powf(1.0 / gamma);

    let mut poles: Vec<(f64, Complex64)> = (kmin..=kmax)
        .map(|k| {
            let s = Complex64::from_polar(radius, (theta + 2.0 * PI * k as f64) / gamma);
            ((s.re + s.norm()) / 2.0, s)
        })
        .filter(|(phi, _)| *phi > 1.0e-15)
        .collect();
    poles.sort_by(|a, b| a.0.total_cmp(&b.0));

    // singularities: origin first, then the poles by increasing phi
    let mut sing: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
    let mut phi: Vec<f64> = vec![0.0];
    for (ph, s) in &poles {
        phi.push(*ph);
        sing.push(*s);
    }
    let j1 = sing.len();
    let mut p = vec![1.0; j1];
    p[0] = (-2.0 * (gamma - delta + 1.0)).max(0.0);
    let mut q = vec![1.0; j1];
    q[j1 - 1] = f64::INFINITY;
    phi.push(f64::INFINITY);

    let mut log_eps_target = log_tolerance;
    let admissible: Vec<usize> = (0..j1)
        .filter(|&j| phi[j] < (log_eps_target - LOG_EPS) / t && phi[j] < phi[j + 1])
        .collect();
    if admissible.is_empty() {
        return None;
    }

    let mut params = vec![Contour::NONE; j1];
    loop {
        for &j in &admissible {
            params[j] = if j < j1 - 1 {
                optimal_bounded(t, phi[j], phi[j + 1], p[j], q[j], log_eps_target)
            } else {
                optimal_unbounded(t, phi[j], p[j], log_eps_target)
            };
        }
        let min_n = params.iter().map(|c| c.n).fold(f64::INFINITY, f64::min);
        if min_n > MAX_NODES {
            log_eps_target += std::f64::consts::LN_10;
            if log_eps_target > -2.0 {
                return None;
            }
        } else {
            break;
        }
    }

    let (region, contour) = params
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.n.total_cmp(&b.1.n))
        .map(|(i, c)| (i, *c))?;

    let n = contour.n as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let u = contour.h * k as f64;
        let s = contour.mu * Complex64::new(1.0, u).powi(2);
        let ds = Complex64::new(-2.0 * contour.mu * u, 2.0 * contour.mu);
        let f = s.powf(gamma - delta) / (s.powf(gamma) - z) * ds;
        acc += (s * t).exp() * f;
    }
    let integral = acc * contour.h / Complex64::new(0.0, 2.0 * PI);

    let residues: Complex64 = sing[region + 1..]
        .iter()
        .map(|&s| s.powf(1.0 - delta) * (s * t).exp() / gamma)
        .sum();

    let mut value = integral + residues;
    if z.im == 0.0 {
        value.im = 0.0;
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return None;
    }
    Some(Inversion {
        value,
        log_tolerance: log_eps_target,
    })
}

fn optimal_bounded(t: f64, phi_j: f64, phi_j1: f64, pj: f64, qj: f64, log_eps_target: f64) -> Contour {
    let fac = 1.01;
    let f_max = (log_eps_target - LOG_EPS).exp();
    let sq_phi_j = phi_j.sqrt();
    let threshold = 2.0 * ((log_eps_target - LOG_EPS) / t).sqrt();
    let sq_phi_j1 = phi_j1.sqrt().min(threshold - sq_phi_j);

    let small = 1.0e-14;
    let (sq_bar_j, sq_bar_j1, f_bar) = if pj < small && qj < small {
        (sq_phi_j, sq_phi_j1, 1.0)
    } else if pj < small {
        let f_min = if sq_phi_j > 0.0 {
            fac * (sq_phi_j / (sq_phi_j1 - sq_phi_j)).powf(qj)
        } else {
            fac
        };
        if f_min >= f_max {
            return Contour::NONE;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fq = f_bar.powf(-1.0 / qj);
        (sq_phi_j, (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq), f_bar)
    } else if qj < small {
        let f_min = fac * (sq_phi_j1 / (sq_phi_j1 - sq_phi_j)).powf(pj);
        if f_min >= f_max {
            return Contour::NONE;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / pj);
        ((2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp), sq_phi_j1, f_bar)
    } else {
        let f_min = fac * (sq_phi_j + sq_phi_j1) / (sq_phi_j1 - sq_phi_j).powf(pj.max(qj));
        if f_min >= f_max {
            return Contour::NONE;
        }
        let f_min = f_min.max(1.5);
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / pj);
        let fq = f_bar.powf(-1.0 / qj);
        let w = -phi_j1 * t / log_eps_target;
        let den = 2.0 + w - (1.0 + w) * fp + fq;
        let a = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den;
        let b = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den;
        (a, b, f_bar)
    };

    let log_eps = log_eps_target - f_bar.ln();
    let w = -sq_bar_j1 * sq_bar_j1 * t / log_eps;
    let mu = (((1.0 + w) * sq_bar_j + sq_bar_j1) / (2.0 + w)).powi(2);
    let h = -2.0 * PI / log_eps * (sq_bar_j1 - sq_bar_j) / ((1.0 + w) * sq_bar_j + sq_bar_j1);
    let n = ((1.0 - log_eps / t / mu).sqrt() / h).ceil();
    if !(mu > 0.0 && h > 0.0 && n.is_finite()) {
        return Contour::NONE;
    }
    Contour { mu, h, n }
}

fn optimal_unbounded(t: f64, phi_j: f64, pj: f64, log_eps_target: f64) -> Contour {
    let sq_phi_j = phi_j.sqrt();
    let mut phibar = if phi_j > 0.0 { phi_j * 1.01 } else { 0.01 };
    let mut sq_phibar = phibar.sqrt();
    let (f_min, f_max, f_tar) = (1.0, 10.0, 5.0_f64);

    let mut n;
    let mut a;
    let mut sq_mu;
    let mut iterations = 0;
    loop {
        let phi_t = phibar * t;
        let log_eps_phi_t = log_eps_target / phi_t;
        n = (phi_t / PI * (1.0 - 1.5 * log_eps_phi_t + (1.0 - 2.0 * log_eps_phi_t).sqrt())).ceil();
        a = PI * n / phi_t;
        sq_mu = sq_phibar * (4.0 - a).abs() / (7.0 - (1.0 + 12.0 * a).sqrt()).abs();
        let fbar = ((sq_phibar - sq_phi_j) / sq_mu).powf(-pj);
        if pj < 1.0e-14 || (f_min < fbar && fbar < f_max) || iterations > 100 {
            break;
        }
        sq_phibar = f_tar.powf(-1.0 / pj) * sq_mu + sq_phi_j;
        phibar = sq_phibar * sq_phibar;
        iterations += 1;
    }
    let mut mu = sq_mu * sq_mu;
    let mut h = (-3.0 * a - 2.0 + 2.0 * (1.0 + 12.0 * a).sqrt()) / (4.0 - a) / n;

    // keep round-off under control
    let threshold = (log_eps_target - LOG_EPS) / t;
    if mu > threshold {
        let q = if pj.abs() < 1.0e-14 {
            0.0
        } else {
            f_tar.powf(-1.0 / pj) * mu.sqrt()
        };
        let phibar = (q + phi_j.sqrt()).powi(2);
        if phibar < threshold {
            let w = (LOG_EPS / (LOG_EPS - log_eps_target)).sqrt();
            let u = (-phibar * t / LOG_EPS).sqrt();
            mu = threshold;
            n = (w * log_eps_target / 2.0 / PI / (u * w - 1.0)).ceil();
            h = w / n;
        } else {
            return Contour::NONE;
        }
    }
    Contour { mu, h, n }
}
