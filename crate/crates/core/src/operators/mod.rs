//! Discretized fractional operators: memory-integral quadratures on `[0, x]`
//! and the spectral Riesz operator on a periodic grid.

mod ddfft;
mod derivatives;
mod grid;
mod orders;
mod riesz;

pub use derivatives::{
    caputo_deriv, caputo_l1_samples, gl_deriv, l1_weights, power_rule, rl_caputo_boundary_terms,
    rl_deriv,
};
pub use grid::{ComplexSamples, Grid1D};
pub use orders::FractionalOrders;
pub(crate) use orders::check_beta;
pub use riesz::{riesz_apply, second_difference, RieszOperator};
