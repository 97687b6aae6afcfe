use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    /// Neither evaluation route reached its accuracy target. Carries the best
    /// value found together with its error estimate.
    #[error("no regime converged (best value {best}, estimated error {est_abs_error:e})")]
    NonConvergence { best: Complex64, est_abs_error: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("neither member of the degenerate pair vanishes at the walls (m = {m})")]
    Selection { m: usize },

    #[error("function has zero norm")]
    ZeroFunction,

    #[error("initial condition is not odd: even part magnitude {even_part:e}")]
    Parity { even_part: f64 },
}
