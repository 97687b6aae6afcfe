//! Forward DFT in double-double arithmetic.
//!
//! The Riesz symbol `|k|^β` amplifies absolute error in the high bins by
//! up to `(πN/2L)^β`. A plain f64 FFT leaves round-off near `1e-16·‖f‖` in
//! every bin, which at `N = 4096` is several times larger than the error
//! already present in the rounded input. Carrying ~32 digits through the
//! butterflies removes the transform's own contribution; the inverse
//! transform sees no amplification and stays in f64.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

const TWO_PI: Dd = Dd {
    hi: 6.283_185_307_179_586,
    lo: 2.449_293_598_294_706_4e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let r = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(r.hi, r.lo + t.lo)
    }

    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, err + (self.hi * o.lo + self.lo * o.hi))
    }

    fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from_f64(x))
    }

    fn div_f64(self, x: f64) -> Dd {
        let q = self.hi / x;
        let r = self.sub(Dd::from_f64(x).mul_f64(q));
        quick_two_sum(q, r.hi / x)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    #[inline]
    fn add(self, o: Self) -> Self {
        Self { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    #[inline]
    fn sub(self, o: Self) -> Self {
        Self { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    #[inline]
    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
}

/// `(sin x, cos x)` by Taylor series, `|x| ≤ π/4`.
fn sin_cos_small(x: Dd) -> (Dd, Dd) {
    let x2 = x.mul(x);
    let mut sin = x;
    let mut cos = Dd::from_f64(1.0);
    let mut term = x;
    let mut cterm = Dd::from_f64(1.0);
    for n in 1..=16 {
        let k = 2.0 * n as f64;
        cterm = cterm.mul(x2).div_f64(-(k - 1.0) * k);
        term = term.mul(x2).div_f64(-k * (k + 1.0));
        cos = cos.add(cterm);
        sin = sin.add(term);
    }
    (sin, cos)
}

/// `(sin 2πt, cos 2πt)` for `t ∈ [0, 1/2]`, `t` exact.
fn sin_cos_turns(t: f64) -> (Dd, Dd) {
    let angle = |u: f64| TWO_PI.mul_f64(u);
    if t <= 0.125 {
        sin_cos_small(angle(t))
    } else if t <= 0.25 {
        let (s, c) = sin_cos_small(angle(0.25 - t));
        (c, s)
    } else {
        let (s, c) = sin_cos_small(angle(0.5 - t));
        (s, c.neg())
    }
}

/// Precomputed radix-2 plan.
#[derive(Debug, Clone)]
pub(crate) struct DdFft {
    n: usize,
    twiddles: Vec<DdComplex>,
}

impl DdFft {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n.is_power_of_two() && n >= 2);
        let twiddles = (0..n / 2)
            .map(|k| {
                let (s, c) = sin_cos_turns(k as f64 / n as f64);
                DdComplex { re: c, im: s.neg() }
            })
            .collect();
        Self { n, twiddles }
    }

    /// Unnormalized forward transform `F_k = Σ_j f_j e^{−2πijk/N}`.
    pub(crate) fn forward(&self, input: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        assert_eq!(input.len(), n);
        let bits = n.trailing_zeros();
        let mut a: Vec<DdComplex> = vec![DdComplex::default(); n];
        for (j, v) in input.iter().enumerate() {
            let r = j.reverse_bits() >> (usize::BITS - bits);
            a[r] = DdComplex { re: Dd::from_f64(v.re), im: Dd::from_f64(v.im) };
        }
        let mut len = 2;
        while len <= n {
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..len / 2 {
                    let w = self.twiddles[k * stride];
                    let u = a[start + k];
                    let v = a[start + k + len / 2].mul(w);
                    a[start + k] = u.add(v);
                    a[start + k + len / 2] = u.sub(v);
                }
            }
            len <<= 1;
        }
        a.iter()
            .map(|c| Complex64::new(c.re.hi + c.re.lo, c.im.hi + c.im.lo))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twiddles_are_unit_to_double_double() {
        for &t in &[0.0, 0.03125, 0.125, 0.2, 0.25, 0.3, 0.4375, 0.5] {
            let (s, c) = sin_cos_turns(t);
            let one = s.mul(s).add(c.mul(c)).sub(Dd::from_f64(1.0));
            assert!((one.hi + one.lo).abs() < 1e-30, "t={t}");
            let x = 2.0 * std::f64::consts::PI * t;
            assert!((s.hi - x.sin()).abs() < 1e-15 && (c.hi - x.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_quarter_turn() {
        let (s, c) = sin_cos_turns(0.25);
        assert_eq!((s.hi, s.lo), (1.0, 0.0));
        assert!(c.hi.abs() < 1e-32);
    }

    #[test]
    fn matches_direct_dft() {
        let n = 16;
        let x: Vec<Complex64> =
            (0..n).map(|j| Complex64::new((j as f64 * 0.37).sin(), (j * j) as f64 * 0.01)).collect();
        let f = DdFft::new(n).forward(&x);
        for k in 0..n {
            let d: Complex64 = (0..n)
                .map(|j| {
                    let th = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
                    x[j] * Complex64::from_polar(1.0, th)
                })
                .sum();
            assert!((f[k] - d).norm() < 1e-13);
        }
    }
}
