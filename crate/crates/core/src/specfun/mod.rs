//! Special functions used by the closed-form channel statistics.

mod bessel;
mod contour;
mod erf;
mod gamma;
mod hyper;
mod meijer;
pub mod quad;

use thiserror::Error;

pub use bessel::{bessel_k, bessel_k_scaled};
pub use erf::{erf_fn, erfc_fn};
pub use gamma::{
    gamma_fn, ln_gamma, ln_gamma_complex, ln_gamma_signed, recip_gamma, GAMMA_MAX_ARG,
};
pub use hyper::{pfq, PfqValue, PFQ_DEFAULT_TOL, PFQ_MAX_TERMS};
pub use meijer::{
    build_slater_expansion, meijer_g, meijer_g_with, Accuracy, MeijerClass, MeijerGSpec,
    MeijerMethod, MeijerValue, SeriesValue, SlaterExpansion, SlaterTerm, Strategy, DEGENERACY_TOL,
    PERTURBATION_SCALE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function} is undefined at {arg}")]
    Domain { function: &'static str, arg: f64 },
    #[error("{function} overflows at order {nu}, argument {x}")]
    Overflow {
        function: &'static str,
        nu: f64,
        x: f64,
    },
    #[error("series did not converge after {terms} terms (last term {last_term:e}, partial sum {partial_sum:e})")]
    SeriesOverflow {
        terms: usize,
        last_term: f64,
        partial_sum: f64,
    },
    #[error("unsupported Meijer-G specification: {0}")]
    UnsupportedSpec(String),
    #[error("lower parameters {first} and {second} differ by the integer {difference}")]
    DegenerateParameters {
        first: usize,
        second: usize,
        difference: f64,
    },
    #[error("perturbed evaluations did not stabilise: {plus:e} vs {minus:e}")]
    Accuracy { plus: f64, minus: f64 },
    #[error("no route reached the error budget: best {value:e} with relative error {rel_error:e}")]
    Unresolved { value: f64, rel_error: f64 },
    #[error("quadrature did not reach tolerance: {value:e} +/- {abs_error:e}")]
    Quadrature { value: f64, abs_error: f64 },
}
