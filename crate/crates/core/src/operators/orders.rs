use crate::error::{Error, Result};

/// Time order `α`, space order `β`, and the derived effective order `γ = β − 1`.
///
/// `β = 2` is admitted as the classical (unitary) limit; `γ` is then 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrders {
    alpha: f64,
    beta: f64,
}

impl FractionalOrders {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        check_beta(beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.beta - 1.0
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta > 1.0 && beta <= 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("beta must lie in (1, 2], got {beta}")))
    }
}
