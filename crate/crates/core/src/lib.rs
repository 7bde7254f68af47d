//! Statistics of cascaded Gamma-Gamma turbulence and pointing-error fading,
//! outage probability of multi-surface reflective links (optical cascade,
//! optical parallel branches, terahertz cascade), and a Monte Carlo oracle.

// coefficient tables keep their published digits; `!(x > 0.0)` also rejects NaN
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod distributions;
pub mod mc;
pub mod performance;
pub mod specfun;

use thiserror::Error;

pub use specfun::Accuracy;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} is undefined at {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("exponent tuple is degenerate: {0}")]
    Degenerate(String),
    #[error("parallel branches must share one channel law")]
    HeterogeneousBranches,
    #[error(transparent)]
    SpecFun(#[from] specfun::SpecFunError),
}

pub type Result<T> = std::result::Result<T, Error>;

/// 10^(db/10)
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// 10·log10(x)
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
