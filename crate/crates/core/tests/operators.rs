mod support;

use std::f64::consts::PI;

use levyslab::operators::{
    caputo_deriv, gl_deriv, riesz_apply, rl_caputo_boundary_terms, rl_deriv, second_difference,
    ComplexSamples, Grid1D,
};
use levyslab::special::{gamma_fn, sin_pi, MLParams};
use levyslab::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::Oracle;

// Γ(4)/Γ(3.5) from the extended-precision oracle, frozen.
const GL_CUBE_RATIO: f64 = 1.805_406_667_352_820_2;

#[test]
fn frozen_cube_ratio_matches_oracle() {
    let mut o = Oracle::new();
    assert!((6.0 / o.gamma(3.5) - GL_CUBE_RATIO).abs() < 1e-15);
}

#[test]
fn caputo_examples() {
    for &a in &[0.2, 0.5, 0.95] {
        assert_eq!(caputo_deriv(|_| 1.0, a, 1.0, 1e-3).unwrap(), 0.0);
    }
    let d = caputo_deriv(|y| y, 0.5, 1.0, 1e-4).unwrap();
    assert!((d - 1.128_379_167_1).abs() < 1e-3);
}

#[test]
fn caputo_of_constants_vanishes_everywhere() {
    for &a in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        for &x in &[0.1, 1.0, 3.7] {
            assert_eq!(caputo_deriv(|_| -2.25, a, x, x / 64.0).unwrap(), 0.0);
        }
    }
}

#[test]
fn caputo_domain_errors() {
    assert!(matches!(caputo_deriv(|y| y, 0.5, -1.0, 1e-3), Err(Error::Domain(_))));
    assert!(matches!(caputo_deriv(|y| y, 1.2, 1.0, 1e-3), Err(Error::Domain(_))));
    assert!(matches!(rl_deriv(|y| y, 2.0, 1.0, 1e-3), Err(Error::Domain(_))));
    assert!(matches!(gl_deriv(&[0.0; 4], 0.0, 1e-3), Err(Error::Domain(_))));
}

#[test]
fn ml_is_a_caputo_eigenfunction() {
    let mut o = Oracle::new();
    for &g in &[0.5, 0.7, 0.9] {
        let p = MLParams::one(g).unwrap();
        for &lam in &[-1.0, -2.0] {
            let f = |y: f64| p.eval_real(lam * y.powf(g)).unwrap();
            for &x in &[0.5, 1.0] {
                let d = caputo_deriv(f, g, x, 1e-4).unwrap();
                let rhs = lam * o.ml_real(g, 1.0, lam * x.powf(g));
                assert!((d - rhs).abs() <= 1e-3 * rhs.abs(), "g={g} lam={lam} x={x} d={d} rhs={rhs}");
            }
        }
    }
}

#[test]
fn rl_examples() {
    let d = rl_deriv(|_| 1.0, 0.5, 4.0, 1e-4).unwrap();
    assert!((d - 0.282_094_791_8).abs() < 1e-4, "{d}");
    let d = rl_deriv(|y| y * y, 0.5, 1.0, 1e-4).unwrap();
    assert!((d - 1.504_505_556_1).abs() < 1e-3, "{d}");
    let rl = rl_deriv(|y| y, 0.5, 1.0, 1e-4).unwrap();
    let c = caputo_deriv(|y| y, 0.5, 1.0, 1e-4).unwrap();
    assert!((rl - c).abs() < 1e-6);
}

#[test]
fn rl_caputo_relation_with_nonzero_start() {
    // f = 2 + y: RL = Caputo + 2 x^{−α}/Γ(1−α)
    let (a, x) = (0.4, 1.3);
    let rl = rl_deriv(|y| 2.0 + y, a, x, 1e-4).unwrap();
    let c = caputo_deriv(|y| 2.0 + y, a, x, 1e-4).unwrap();
    let b = rl_caputo_boundary_terms(&[2.0], a, x);
    assert!((rl - (c + b)).abs() < 1e-6, "{rl} vs {}", c + b);
}

#[test]
fn power_rule_for_rl() {
    for &p in &[1.0f64, 2.0, 3.0] {
        for &a in &[0.3, 0.5, 0.8] {
            let exact = gamma_fn(p + 1.0).unwrap() / gamma_fn(p + 1.0 - a).unwrap();
            let d = rl_deriv(|y| y.powf(p), a, 1.0, 1e-4).unwrap();
            assert!((d - exact).abs() <= 1e-3, "p={p} a={a} d={d} exact={exact}");
        }
    }
}

fn gl_at_one(f: impl Fn(f64) -> f64, a: f64, h: f64) -> f64 {
    let n = (1.0 / h).round() as usize;
    let s: Vec<f64> = (0..=n).map(|j| f(j as f64 * h)).collect();
    *gl_deriv(&s, a, h).unwrap().last().unwrap()
}

#[test]
fn gl_examples() {
    assert!((gl_at_one(|y| y, 1.0, 1e-3) - 1.0).abs() < 1e-2);
    assert!((gl_at_one(|y| y, 0.5, 1e-3) - 1.128_379_167_1).abs() < 1e-2);
    assert!((gl_at_one(|y| y.powi(3), 0.5, 1e-3) - GL_CUBE_RATIO).abs() < 1e-2);
}

#[test]
fn three_discretizations_agree() {
    let fs: [fn(f64) -> f64; 3] = [|y| y.sin(), |y| y * (-y).exp(), |y| y.powi(2) - y];
    for f in fs {
        for &a in &[0.3, 0.6, 0.9] {
            let c = caputo_deriv(f, a, 1.0, 1e-3).unwrap();
            let r = rl_deriv(f, a, 1.0, 1e-3).unwrap();
            let g = gl_at_one(f, a, 1e-3);
            assert!((c - r).abs() < 1e-2 && (c - g).abs() < 1e-2 && (r - g).abs() < 1e-2);
        }
    }
}

#[test]
fn gl_converges_at_first_order() {
    let exact = GL_CUBE_RATIO;
    let e1 = (gl_at_one(|y| y.powi(3), 0.5, 1e-2) - exact).abs();
    let e2 = (gl_at_one(|y| y.powi(3), 0.5, 5e-3) - exact).abs();
    let ratio = e1 / e2;
    assert!(ratio > 1.8 && ratio < 2.2, "{ratio}");
}

#[test]
fn caputo_l1_converges_faster_than_first_order() {
    let a = 0.5;
    let exact = 2.0 / gamma_fn(3.0 - a).unwrap();
    let e1 = (caputo_deriv(|y| y * y, a, 1.0, 1e-2).unwrap() - exact).abs();
    let e2 = (caputo_deriv(|y| y * y, a, 1.0, 5e-3).unwrap() - exact).abs();
    // order 2 − α = 1.5
    let observed = (e1 / e2).log2();
    assert!((observed - 1.5).abs() < 0.1, "{observed}");
}

#[test]
fn riesz_examples() {
    // absolute 1e-10 at β = 2 is within reach only while (πN/2)² ε stays small
    let coarse = Grid1D::new(1.0, 256).unwrap();
    let s = ComplexSamples::from_real_fn(coarse, |r| sin_pi(r));
    let two = riesz_apply(&s, 2.0).unwrap();
    assert!(two.max_abs_diff(&s.scaled(Complex64::new(PI * PI, 0.0))) <= 1e-10);

    let g = Grid1D::new(1.0, 4096).unwrap();
    let s = ComplexSamples::from_real_fn(g, |r| sin_pi(r));
    let e1 = (1.8 * PI.ln()).exp();
    assert!((e1 - 7.850_002).abs() < 1e-6, "{e1}");
    let frac = riesz_apply(&s, 1.8).unwrap();
    let dev = frac.max_abs_diff(&s.scaled(Complex64::new(e1, 0.0)));
    assert!(dev <= 1e-10 * e1, "{dev:e}");
    let one = ComplexSamples::from_real_fn(g, |_| 1.0);
    assert!(riesz_apply(&one, 1.8).unwrap().max_abs() <= 1e-12);
}

#[test]
fn riesz_is_linear() {
    let g = Grid1D::new(1.0, 256).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rand_samples = |rng: &mut ChaCha8Rng| {
        let v = (0..256).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        ComplexSamples::new(g, v.collect()).unwrap()
    };
    for _ in 0..20 {
        let f = rand_samples(&mut rng);
        let h = rand_samples(&mut rng);
        let a = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let combo = ComplexSamples::new(
            g,
            f.values().iter().zip(h.values()).map(|(x, y)| a * x + y).collect(),
        )
        .unwrap();
        let lhs = riesz_apply(&combo, 1.6).unwrap();
        let hf = riesz_apply(&f, 1.6).unwrap();
        let hh = riesz_apply(&h, 1.6).unwrap();
        let rhs = ComplexSamples::new(
            g,
            hf.values().iter().zip(hh.values()).map(|(x, y)| a * x + y).collect(),
        )
        .unwrap();
        // relative to the size of the output
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * lhs.max_abs().max(1.0));
    }
}

#[test]
fn riesz_preserves_real_parity() {
    let g = Grid1D::new(1.0, 512).unwrap();
    // mirror the samples bit-exactly: r_{N−j} and −r_j differ in the last ulp
    let symmetric = |f: fn(f64) -> f64, sign: f64| {
        let mut v = vec![Complex64::new(0.0, 0.0); 512];
        for j in 0..=256 {
            // the odd extension vanishes at both fixed points of r ↦ −r
            let x = if sign < 0.0 && (j == 0 || j == 256) { 0.0 } else { f(g.point(j)) };
            v[j] = Complex64::new(x, 0.0);
            v[g.mirror_index(j)] = Complex64::new(sign * x, 0.0);
        }
        ComplexSamples::new(g, v).unwrap()
    };
    let even = symmetric(|r| (-8.0 * r * r).exp() + (2.0 * PI * r).cos(), 1.0);
    let odd = symmetric(|r| r * (-10.0 * r * r).exp(), -1.0);
    for (f, sign) in [(even, 1.0), (odd, -1.0)] {
        let hf = riesz_apply(&f, 1.7).unwrap();
        let v = hf.values();
        let scale = hf.max_abs();
        for j in 0..v.len() {
            assert!(v[j].im.abs() <= 1e-12 * scale, "{:e}", v[j].im / scale);
            let mirrored = v[g.mirror_index(j)].re;
            assert!((v[j].re - sign * mirrored).abs() <= 1e-12 * scale, "{:e}", (v[j].re - sign * mirrored) / scale);
        }
    }
}

#[test]
fn riesz_at_two_matches_second_difference() {
    let f = |r: f64| (PI * r).sin().exp();
    let errs: Vec<f64> = [256usize, 512]
        .iter()
        .map(|&n| {
            let g = Grid1D::new(1.0, n).unwrap();
            let s = ComplexSamples::from_real_fn(g, f);
            riesz_apply(&s, 2.0).unwrap().max_abs_diff(&second_difference(&s))
        })
        .collect();
    let ratio = errs[0] / errs[1];
    assert!(errs[0] < 1e-2, "{errs:?}");
    assert!(ratio > 3.6 && ratio < 4.4, "O(h²) expected, ratio {ratio}");
}
