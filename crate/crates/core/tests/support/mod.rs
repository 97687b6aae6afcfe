//! Independent reference implementations used only by the test suites.
//!
//! The extended-precision oracle sums the Mittag-Leffler power series directly
//! in 512-bit arithmetic, with Γ computed from the Stirling series after an
//! upward shift of the argument. None of this shares code with the library.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use levyslab::operators::{ComplexSamples, RieszOperator};
use num_complex::Complex64;

const PREC: usize = 512;
const RM: RoundingMode = RoundingMode::ToEven;
const STIRLING_SHIFT: f64 = 120.0;
const STIRLING_TERMS: usize = 30;

pub struct Oracle {
    cc: Consts,
    bernoulli: Vec<BigFloat>,
}

fn bf(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_string().parse::<f64>().expect("decimal rendering of a BigFloat")
}

#[derive(Clone)]
struct BigComplex {
    re: BigFloat,
    im: BigFloat,
}

impl BigComplex {
    fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re, PREC, RM), self.im.add(&o.im, PREC, RM))
    }

    fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re, PREC, RM).sub(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.re.mul(&o.im, PREC, RM).add(&self.im.mul(&o.re, PREC, RM), PREC, RM);
        Self::new(re, im)
    }

    fn scale(&self, s: &BigFloat) -> Self {
        Self::new(self.re.mul(s, PREC, RM), self.im.mul(s, PREC, RM))
    }

    fn approx_norm(&self) -> f64 {
        to_f64(&self.re).hypot(to_f64(&self.im))
    }
}

impl Oracle {
    pub fn new() -> Self {
        let mut cc = Consts::new().expect("astro-float constants cache");
        let _ = cc.pi(PREC, RM);
        let bernoulli = bernoulli_numbers(2 * STIRLING_TERMS);
        Self { cc, bernoulli }
    }

    /// ln Γ(x) for x > 0, roughly 60 significant digits.
    fn ln_gamma_big(&mut self, x: &BigFloat) -> BigFloat {
        let one = bf(1.0);
        let mut shift_prod = bf(1.0);
        let mut y = x.clone();
        let limit = bf(STIRLING_SHIFT);
        while y.cmp(&limit).map(|c| c < 0).unwrap_or(false) {
            shift_prod = shift_prod.mul(&y, PREC, RM);
            y = y.add(&one, PREC, RM);
        }
        let cc = &mut self.cc;
        let half = bf(0.5);
        let two_pi = cc.pi(PREC, RM).mul(&bf(2.0), PREC, RM);
        let ln_y = y.ln(PREC, RM, cc);
        // (y - 1/2) ln y - y + ln(2π)/2
        let mut acc = y
            .sub(&half, PREC, RM)
            .mul(&ln_y, PREC, RM)
            .sub(&y, PREC, RM)
            .add(&two_pi.ln(PREC, RM, cc).mul(&half, PREC, RM), PREC, RM);
        let y2 = y.mul(&y, PREC, RM);
        let mut ypow = y.clone();
        for j in 1..=STIRLING_TERMS {
            let b = &self.bernoulli[2 * j];
            let denom = bf((2 * j * (2 * j - 1)) as f64).mul(&ypow, PREC, RM);
            acc = acc.add(&b.div(&denom, PREC, RM), PREC, RM);
            ypow = ypow.mul(&y2, PREC, RM);
        }
        acc.sub(&shift_prod.ln(PREC, RM, cc), PREC, RM)
    }

    fn gamma_big(&mut self, x: &BigFloat) -> BigFloat {
        let lg = self.ln_gamma_big(x);
        lg.exp(PREC, RM, &mut self.cc)
    }

    /// Γ(x) for x > 0.
    pub fn gamma(&mut self, x: f64) -> f64 {
        assert!(x > 0.0);
        to_f64(&self.gamma_big(&bf(x)))
    }

    /// Direct extended-precision summation of `Σ z^k / Γ(γk + δ)`.
    pub fn mittag_leffler(&mut self, gamma: f64, delta: f64, z: Complex64) -> Complex64 {
        let zb = BigComplex::new(bf(z.re), bf(z.im));
        let g = bf(gamma);
        let d = bf(delta);
        let mut zpow = BigComplex::new(bf(1.0), bf(0.0));
        let mut sum = BigComplex::new(bf(0.0), bf(0.0));
        let mut small_run = 0;
        let mut prev_mag = f64::INFINITY;
        for k in 0..20_000usize {
            let arg = g.mul(&bf(k as f64), PREC, RM).add(&d, PREC, RM);
            let rg = bf(1.0).div(&self.gamma_big(&arg), PREC, RM);
            let term = zpow.scale(&rg);
            let mag = term.approx_norm();
            sum = sum.add(&term);
            // past the peak, stop once terms are negligible against the sum itself
            if k > 5 && mag < prev_mag && mag < 1e-40 * sum.approx_norm().max(1e-30) {
                small_run += 1;
                if small_run > 3 {
                    break;
                }
            } else {
                small_run = 0;
            }
            prev_mag = mag;
            zpow = zpow.mul(&zb);
        }
        Complex64::new(to_f64(&sum.re), to_f64(&sum.im))
    }

    pub fn ml_real(&mut self, gamma: f64, delta: f64, x: f64) -> f64 {
        self.mittag_leffler(gamma, delta, Complex64::new(x, 0.0)).re
    }
}

/// B_0..B_n from the recurrence Σ_{k<m+1} C(m+1,k) B_k = 0, in extended precision.
fn bernoulli_numbers(n: usize) -> Vec<BigFloat> {
    let p = PREC + 256;
    let mut b: Vec<BigFloat> = vec![BigFloat::from_f64(1.0, p)];
    for m in 1..=n {
        let mut acc = BigFloat::from_f64(0.0, p);
        // binomial C(m+1, k) built incrementally
        let mut binom = BigFloat::from_f64(1.0, p);
        for (k, bk) in b.iter().enumerate() {
            acc = acc.add(&binom.mul(bk, p, RM), p, RM);
            let num = BigFloat::from_f64((m + 1 - k) as f64, p);
            let den = BigFloat::from_f64((k + 1) as f64, p);
            binom = binom.mul(&num, p, RM).div(&den, p, RM);
        }
        let bm = acc.div(&BigFloat::from_f64((m + 1) as f64, p), p, RM).neg();
        b.push(bm);
    }
    b
}

/// Composite trapezoid rule on [a, b] with `n` panels.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h)).sum();
    h * (0.5 * (f(a) + f(b)) + inner)
}

/// `‖H δ − e δ‖/‖ψ‖` where `δ` is the difference between the stored samples
/// and the exact values `sin(π·arg_j)` or `cos(π·arg_j)` in 256-bit
/// arithmetic: the residual a perfect operator would still show.
pub fn rounding_floor(
    mode_samples: &ComplexSamples,
    arg: impl Fn(usize) -> f64,
    cosine: bool,
    beta: f64,
    e: f64,
) -> f64 {
    let p = 256;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().unwrap();
    let pi = cc.pi(p, rm);
    let g = *mode_samples.grid();
    let delta: Vec<Complex64> = (0..g.n_points())
        .map(|j| {
            let t = BigFloat::from_f64(arg(j), p).mul(&pi, p, rm);
            let exact = if cosine { t.cos(p, rm, &mut cc) } else { t.sin(p, rm, &mut cc) };
            let d = BigFloat::from_f64(mode_samples.values()[j].re, p).sub(&exact, p, rm);
            let d: f64 = if d.is_zero() { 0.0 } else { d.to_string().parse().unwrap() };
            Complex64::new(d, 0.0)
        })
        .collect();
    let d = ComplexSamples::new(g, delta).unwrap();
    let hd = RieszOperator::new(g, beta).unwrap().apply(&d).unwrap();
    let r: Vec<Complex64> = hd.values().iter().zip(d.values()).map(|(a, b)| a - b * e).collect();
    ComplexSamples::new(g, r).unwrap().l2_norm() / mode_samples.l2_norm()
}
