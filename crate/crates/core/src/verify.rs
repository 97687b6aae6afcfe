//! Acceptance checks shared by the `verify` subcommand and the test suite.
//!
//! Every criterion is a list of numeric checks with a threshold and a
//! direction. The one-line summary reports the check with the worst margin.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::eigenbox::{
    degenerate_modes, degenerate_pair, eigen_residual_with, even_mode, odd_mode,
    operator_over_eigenvalue, select_by_boundary,
};
use crate::error::Result;
use crate::operators::{
    caputo_deriv, caputo_l1_samples, gl_deriv, power_rule, rl_deriv, FractionalOrders, Grid1D,
    RieszOperator,
};
use crate::paraxial::{norm_large_z, norm_small_z, norm_z, z_envelope, SlabConfig, ZEnvelope};
use crate::special::{mittag_leffler, rgamma, MLParams};

/// Verification grid for the spectral criteria.
pub const VERIFY_GRID_POINTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
}

impl Check {
    fn at_most(label: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self { label: label.into(), measured, threshold, bound: Bound::AtMost }
    }

    fn at_least(label: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self { label: label.into(), measured, threshold, bound: Bound::AtLeast }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.measured <= self.threshold,
            Bound::AtLeast => self.measured >= self.threshold,
        }
    }

    /// How far past (or short of) the threshold; larger is worse.
    fn badness(&self) -> f64 {
        if self.measured.is_nan() {
            return f64::INFINITY;
        }
        match self.bound {
            Bound::AtMost if self.threshold == 0.0 => {
                if self.measured <= 0.0 { 0.0 } else { f64::INFINITY }
            }
            Bound::AtMost => self.measured / self.threshold,
            Bound::AtLeast => self.threshold / self.measured,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// The check with the worst margin; failing checks come first.
    pub fn headline(&self) -> &Check {
        self.checks
            .iter()
            .max_by(|a, b| {
                (!a.passed(), a.badness())
                    .partial_cmp(&(!b.passed(), b.badness()))
                    .expect("badness is never NaN")
            })
            .expect("criterion without checks")
    }

    /// `name,status,measured,threshold`.
    pub fn summary_line(&self) -> String {
        let h = self.headline();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!("{},{},{:e},{:e}", self.name, status, h.measured, h.threshold)
    }

    pub fn find(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }
}

/// Which Fourier symbol the spectral criteria use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymbolChoice {
    #[default]
    Correct,
    /// `|k|^{β−1}`: a deliberately wrong operator the suite must reject.
    WrongPower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub quick: bool,
    pub symbol: SymbolChoice,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 0, quick: false, symbol: SymbolChoice::Correct }
    }
}

fn operator(grid: Grid1D, beta: f64, symbol: SymbolChoice) -> Result<RieszOperator> {
    match symbol {
        SymbolChoice::Correct => RieszOperator::new(grid, beta),
        SymbolChoice::WrongPower => {
            Ok(RieszOperator::with_symbol(grid, beta, move |k| k.abs().powf(beta - 1.0)))
        }
    }
}

fn nan_on_error(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

pub fn eigen_verification(symbol: SymbolChoice) -> Result<CriterionReport> {
    let beta = 1.8;
    let grid = Grid1D::new(1.0, VERIFY_GRID_POINTS)?;
    let op = operator(grid, beta, symbol)?;
    let mut checks = Vec::new();
    for m in 1..=3 {
        let mode = odd_mode(m, grid, beta)?;
        let res = eigen_residual_with(&op, &mode.samples, mode.eigenvalue)?;
        let over_e = operator_over_eigenvalue(&op, &mode.samples, mode.eigenvalue)?;
        checks.push(Check::at_most(format!("residual_m{m}"), res, 1e-10));
        checks.push(Check::at_most(
            format!("max_dev_m{m}"),
            over_e.max_abs_diff(&mode.samples),
            1e-10,
        ));
    }
    Ok(CriterionReport { name: "01_eigen_verification".into(), checks })
}

pub fn degenerate_family(symbol: SymbolChoice) -> Result<CriterionReport> {
    let beta = 1.8;
    let grid = Grid1D::new(1.0, VERIFY_GRID_POINTS)?;
    let op = operator(grid, beta, symbol)?;
    let mut checks = Vec::new();
    let mut wrong_selections = 0.0;
    for m in 1..=4 {
        let (c, s) = degenerate_modes(m, grid, beta)?;
        for member in [&c, &s] {
            let res = eigen_residual_with(&op, &member.samples, member.eigenvalue)?;
            checks.push(Check::at_most(
                format!("residual_m{m}_{}", member.parity.label()),
                res,
                1e-10,
            ));
        }
        let picked = select_by_boundary(degenerate_pair(m, grid)?, m);
        let expected = if m % 2 == 0 { &s.samples } else { &c.samples };
        if picked.as_ref().ok() != Some(expected) {
            wrong_selections += 1.0;
        }
    }
    checks.push(Check::at_most("wrong_selections", wrong_selections, 0.0));
    Ok(CriterionReport { name: "02_degenerate_family".into(), checks })
}

pub fn even_family_failure(symbol: SymbolChoice) -> Result<CriterionReport> {
    let beta = 1.8;
    let grid = Grid1D::new(1.0, VERIFY_GRID_POINTS)?;
    let op = operator(grid, beta, symbol)?;
    let mode = even_mode(0, grid, beta)?;
    let res = eigen_residual_with(&op, &mode.samples, mode.eigenvalue)?;
    Ok(CriterionReport {
        name: "03_even_family_failure".into(),
        checks: vec![Check::at_least("residual_m0", res, 0.1)],
    })
}

pub fn mittag_leffler_identities(seed: u64) -> Result<CriterionReport> {
    let exp_p = MLParams::one(1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exp_err: f64 = 0.0;
    for _ in 0..500 {
        let r = 3.0 * rng.gen::<f64>().sqrt();
        let th = rng.gen_range(0.0..2.0 * PI);
        let z = Complex64::from_polar(r, th);
        let err = mittag_leffler(exp_p, z).map(|v| (v.value - z.exp()).norm());
        exp_err = exp_err.max(err.unwrap_or(f64::NAN));
    }
    let cos_p = MLParams::one(2.0)?;
    let mut cos_err: f64 = 0.0;
    for i in 0..100 {
        let x = 3.0 * i as f64 / 99.0;
        cos_err = cos_err.max(nan_on_error(cos_p.eval_real(-x * x).map(|v| (v - x.cos()).abs())));
    }
    let mut norm_err: f64 = 0.0;
    for &(g, d) in &[(0.3, 0.4), (0.5, 1.0), (0.8, 1.0), (1.0, 1.0), (1.6, 1.8), (2.5, 0.9)] {
        let v = mittag_leffler(MLParams::new(g, d)?, Complex64::new(0.0, 0.0))?;
        norm_err = norm_err.max((v.value - rgamma(d)).norm());
    }
    Ok(CriterionReport {
        name: "04_mittag_leffler_identities".into(),
        checks: vec![
            Check::at_most("exp_identity", exp_err, 1e-10),
            Check::at_most("cos_identity", cos_err, 1e-10),
            Check::at_most("normalization", norm_err, 1e-14),
        ],
    })
}

pub fn caputo_eigenfunction() -> Result<CriterionReport> {
    let lam = -1.0;
    let mut worst: f64 = 0.0;
    for &g in &[0.5, 0.7, 0.9] {
        let p = MLParams::one(g)?;
        for &z in &[0.5, 1.0] {
            let d = caputo_deriv(|y| p.eval_real(lam * y.powf(g)).unwrap_or(f64::NAN), g, z, 1e-4)?;
            let rhs = lam * p.eval_real(lam * z.powf(g))?;
            worst = worst.max((d - rhs).abs() / rhs.abs());
        }
    }
    Ok(CriterionReport {
        name: "05_caputo_eigenfunction".into(),
        checks: vec![Check::at_most("relative_error", worst, 1e-3)],
    })
}

pub fn power_rule_check() -> Result<CriterionReport> {
    let mut rl_err: f64 = 0.0;
    let mut gl_err: f64 = 0.0;
    let h_gl = 1e-3;
    let n_gl = 1000;
    for &p in &[1.0f64, 2.0, 3.0] {
        for &a in &[0.3, 0.5, 0.8] {
            let exact = power_rule(p, a, 1.0)?;
            let rl = rl_deriv(|y| y.powf(p), a, 1.0, 1e-4)?;
            rl_err = rl_err.max((rl - exact).abs());
            let samples: Vec<f64> = (0..=n_gl).map(|j| (j as f64 * h_gl).powf(p)).collect();
            let gl = *gl_deriv(&samples, a, h_gl)?.last().expect("non-empty");
            gl_err = gl_err.max((gl - rl).abs());
        }
    }
    Ok(CriterionReport {
        name: "06_power_rule".into(),
        checks: vec![
            Check::at_most("rl_vs_formula", rl_err, 1e-3),
            Check::at_most("gl_vs_rl", gl_err, 1e-2),
        ],
    })
}

pub fn norm_decay() -> Result<CriterionReport> {
    let mut large: f64 = 0.0;
    let mut small: f64 = 0.0;
    for &g in &[0.5, 0.8] {
        for &c in &[1.0, 2.0] {
            let env = ZEnvelope::new(Complex64::new(1.0, 0.0), c, g)?;
            for &x in &[1e3, 1e4, 1e5] {
                let z = (x / c).powf(1.0 / g);
                let ratio = nan_on_error(norm_z(&env, z)) / norm_large_z(&env, z);
                large = large.max((ratio - 1.0).abs());
            }
            for &x in &[0.05, 0.02, 0.01] {
                let z = (x / c).powf(1.0 / g);
                small = small.max((nan_on_error(norm_z(&env, z)) - norm_small_z(&env, z)).abs());
            }
        }
    }
    Ok(CriterionReport {
        name: "07_norm_decay".into(),
        checks: vec![
            Check::at_most("large_z_ratio_deviation", large, 0.02),
            Check::at_most("small_z_abs_error", small, 1e-4),
        ],
    })
}

pub fn unitary_and_classical_limits() -> Result<CriterionReport> {
    let mut drift: f64 = 0.0;
    for &c in &[0.5, 1.0, 5.0] {
        let env = ZEnvelope::new(Complex64::new(1.0, 0.0), c, 1.0)?;
        for i in 0..=100 {
            let z = 10.0 * i as f64 / 100.0;
            drift = drift.max((nan_on_error(norm_z(&env, z)) - 1.0).abs());
        }
    }
    let mut eig: f64 = 0.0;
    for &l in &[0.5, 1.0, 2.0] {
        let grid = Grid1D::new(l, 64)?;
        for m in 1..=8 {
            let e = odd_mode(m, grid, 2.0)?.eigenvalue;
            let q = m as f64 * PI / l;
            eig = eig.max((e - q * q).abs() / (q * q));
        }
    }
    Ok(CriterionReport {
        name: "08_unitary_classical_limits".into(),
        checks: vec![
            Check::at_most("norm_drift_gamma_one", drift, 1e-9),
            Check::at_most("eigenvalue_rel_error_beta_two", eig, 1e-12),
        ],
    })
}

/// `‖2ik ∂_z^γ Z + (ω_β + e_1) Z‖ / ‖(ω_β + e_1) Z‖` on `z ∈ [0.1, 2]`.
pub fn fse_residual() -> Result<CriterionReport> {
    let cfg = SlabConfig::new(1.0, 0.1, 0.0, FractionalOrders::new(0.5, 1.8)?, 1)?;
    let gamma = cfg.orders().gamma();
    let env = cfg.envelope(1, Complex64::new(1.0, 0.0))?;
    let h = 1e-3;
    let n = 2000;
    let f: Vec<Complex64> = (0..=n)
        .into_par_iter()
        .map(|j| z_envelope(&env, j as f64 * h))
        .collect::<Result<_>>()?;
    let d = caputo_l1_samples(&f, gamma, h)?;
    let w = cfg.omega_beta() + cfg.eigenvalue(1);
    let two_ik = Complex64::new(0.0, 2.0 * cfg.wavenumber());
    let (mut num, mut den) = (0.0, 0.0);
    for j in 100..=n {
        num += (two_ik * d[j] + w * f[j]).norm_sqr();
        den += (w * f[j]).norm_sqr();
    }
    Ok(CriterionReport {
        name: "09_fse_residual".into(),
        checks: vec![Check::at_most("relative_residual", (num / den).sqrt(), 1e-2)],
    })
}

type CriterionFn = fn(&VerifyOptions) -> Result<CriterionReport>;

fn criteria(quick: bool) -> Vec<(&'static str, CriterionFn)> {
    let mut all: Vec<(&'static str, CriterionFn, bool)> = vec![
        ("01_eigen_verification", |o| eigen_verification(o.symbol), true),
        ("02_degenerate_family", |o| degenerate_family(o.symbol), true),
        ("03_even_family_failure", |o| even_family_failure(o.symbol), true),
        ("04_mittag_leffler_identities", |o| mittag_leffler_identities(o.seed), true),
        ("05_caputo_eigenfunction", |_| caputo_eigenfunction(), false),
        ("06_power_rule", |_| power_rule_check(), false),
        ("07_norm_decay", |_| norm_decay(), true),
        ("08_unitary_classical_limits", |_| unitary_and_classical_limits(), true),
        ("09_fse_residual", |_| fse_residual(), false),
    ];
    if quick {
        all.retain(|c| c.2);
    }
    all.into_iter().map(|(n, f, _)| (n, f)).collect()
}

fn run_once(opts: &VerifyOptions) -> Vec<CriterionReport> {
    let mut reports: Vec<CriterionReport> = criteria(opts.quick)
        .into_par_iter()
        .map(|(name, f)| {
            f(opts).unwrap_or_else(|e| CriterionReport {
                name: name.into(),
                checks: vec![Check::at_most(format!("error: {e}"), f64::NAN, 0.0)],
            })
        })
        .collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

/// Runs the suite twice; the second pass backs the determinism criterion.
pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionReport> {
    let first = run_once(opts);
    let second = run_once(opts);
    let differing = first
        .iter()
        .zip(&second)
        .filter(|(a, b)| a.summary_line() != b.summary_line() || a.checks != b.checks)
        .count()
        + first.len().abs_diff(second.len());
    let mut reports = first;
    reports.push(CriterionReport {
        name: "10_determinism".into(),
        checks: vec![Check::at_most("differing_criteria", differing as f64, 0.0)],
    });
    reports
}

/// Header plus one line per criterion, sorted by name.
pub fn render_summary(reports: &[CriterionReport]) -> String {
    let mut out = String::from("name,status,measured,threshold\n");
    for r in reports {
        out.push_str(&r.summary_line());
        out.push('\n');
    }
    out
}
