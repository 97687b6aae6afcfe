//! Gamma and Mittag-Leffler functions.

mod gamma;
mod laplace;
mod mittag_leffler;

pub use gamma::{cos_pi, gamma_fn, ln_abs_rgamma, ln_gamma, rgamma, sin_pi, GAMMA_MAX_ARG};
pub use mittag_leffler::{
    mittag_leffler, ml_asymptotic, EvalResult, MLParams, Regime, ASYMPTOTIC_RADIUS, SERIES_RADIUS,
    TARGET_ERROR,
};
