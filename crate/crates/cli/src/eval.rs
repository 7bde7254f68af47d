//! Single-value spot checks.

use cascade_fading_core::channels::molecular_absorption;
use cascade_fading_core::distributions::{z_cdf, z_pdf};
use cascade_fading_core::performance::{diversity_order, Flavor};

use crate::config::{ConfigError, ScenarioConfig, ScenarioKind};
use crate::model::{channel, thz_atmosphere};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Pdf,
    Cdf,
    Kappa,
    Diversity,
}

#[derive(Debug)]
pub enum EvalError {
    Config(ConfigError),
    Numeric(cascade_fading_core::Error),
}

impl From<ConfigError> for EvalError {
    fn from(e: ConfigError) -> Self {
        EvalError::Config(e)
    }
}

/// (value, flag). Grid-dependent fields take the first grid point.
pub fn eval(
    cfg: &ScenarioConfig,
    q: Quantity,
    at: Option<f64>,
) -> Result<(f64, &'static str), EvalError> {
    let (o, i) = cfg.points()[0];
    let cfg = cfg.at(o, i);
    let need_at = || {
        at.ok_or_else(|| ConfigError {
            line: None,
            field: None,
            message: "--at is required for pdf and cdf".into(),
        })
    };
    match q {
        Quantity::Pdf => {
            let v = z_pdf(&channel(&cfg)?, need_at()?).map_err(EvalError::Numeric)?;
            Ok((v.value, v.accuracy.as_str()))
        }
        Quantity::Cdf => {
            let v = z_cdf(&channel(&cfg)?, need_at()?).map_err(EvalError::Numeric)?;
            Ok((v.value, v.accuracy.as_str()))
        }
        Quantity::Kappa => {
            let f = match at.or(cfg.atmosphere.frequency) {
                Some(f) if f > 0.0 && f.is_finite() => f,
                _ => {
                    return Err(ConfigError::field(
                        "atmosphere.frequency",
                        "kappa needs a positive frequency (--at or atmosphere.frequency)",
                    )
                    .into())
                }
            };
            let a = molecular_absorption(f, &thz_atmosphere(&cfg)?);
            Ok((
                a.kappa,
                if a.out_of_band {
                    "out_of_band"
                } else {
                    "clean"
                },
            ))
        }
        Quantity::Diversity => {
            let ch = channel(&cfg)?;
            let (flavor, copies) = match cfg.scenario {
                ScenarioKind::FsoCascade => (Flavor::Fso, 1),
                ScenarioKind::FsoParallel => (Flavor::Fso, cfg.transceiver.branches.unwrap_or(1)),
                ScenarioKind::ThzCascade => (Flavor::Thz, 1),
            };
            Ok((diversity_order(&ch, flavor) * copies as f64, "clean"))
        }
    }
}
