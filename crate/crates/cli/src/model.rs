//! Resolution of a config record into a channel and an operating point.

use cascade_fading_core::channels::{
    fso_gg_params, hill_cn2, molecular_absorption, rytov_variance, thz_gg_params, FsoLinkGeometry,
    HillSign, ReceiverChain, ThzAtmosphere, ThzLinkBudget, TurbulencePreset, SPEED_OF_LIGHT,
};
use cascade_fading_core::distributions::{CompositeProduct, GammaGammaParams, PointingErrorParams};
use cascade_fading_core::performance::gamma_s;

use crate::config::{ConfigError, LinkConfig, ScenarioConfig, ScenarioKind};

/// A fully specified evaluation point.
#[derive(Debug, Clone)]
pub enum Model {
    FsoCascade {
        channel: CompositeProduct,
        ratio: f64,
    },
    FsoParallel {
        branch: CompositeProduct,
        branches: usize,
        ratio: f64,
    },
    ThzCascade {
        channel: CompositeProduct,
        /// γ_s/γ_th
        ratio: f64,
        gamma_th: f64,
        kappa_t: f64,
        kappa_r: f64,
    },
}

fn core_err(field: impl Into<String>) -> impl FnOnce(cascade_fading_core::Error) -> ConfigError {
    let field = field.into();
    move |e| ConfigError::field(field, e.to_string())
}

fn positive(field: &str, v: Option<f64>) -> Result<Option<f64>, ConfigError> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(ConfigError::field(
            field,
            format!("must be positive and finite, got {x}"),
        )),
        _ => Ok(v),
    }
}

fn required(field: &str, v: Option<f64>, why: &str) -> Result<f64, ConfigError> {
    positive(field, v)?.ok_or_else(|| ConfigError::field(field, format!("required {why}")))
}

pub fn thz_atmosphere(cfg: &ScenarioConfig) -> Result<ThzAtmosphere, ConfigError> {
    let a = &cfg.atmosphere;
    let mut atm = ThzAtmosphere::standard();
    if let Some(t) = a.temperature {
        atm.temperature = t;
    }
    if let Some(p) = a.pressure {
        atm.pressure = p;
    }
    if let Some(h) = a.humidity {
        atm.humidity = h;
    }
    let hill = a.c_t.is_some() || a.a_t.is_some() || a.a_q.is_some();
    atm.c_t = a.c_t.unwrap_or(0.0);
    atm.a_t = a.a_t.unwrap_or(0.0);
    atm.a_q = a.a_q.unwrap_or(0.0);
    atm.hill_sign = match a.hill_sign.as_deref() {
        None | Some("plus") => HillSign::Plus,
        Some("minus") => HillSign::Minus,
        Some(other) => {
            return Err(ConfigError::field(
                "atmosphere.hill_sign",
                format!("expected \"plus\" or \"minus\", got {other:?}"),
            ))
        }
    };
    atm.cn2_override = match (a.cn2, hill) {
        (Some(c), true) => {
            return Err(ConfigError::field(
                "atmosphere.cn2",
                format!("cn2 = {c} conflicts with the Hill coefficients c_t/a_t/a_q"),
            ))
        }
        (Some(c), false) => Some(c),
        (None, true) => None,
        (None, false) => atm.cn2_override,
    };
    atm.validate().map_err(core_err("atmosphere"))?;
    Ok(atm)
}

fn turbulence(
    cfg: &ScenarioConfig,
    i: usize,
    link: &LinkConfig,
) -> Result<GammaGammaParams, ConfigError> {
    let at = |f: &str| format!("links[{i}].{f}");
    let explicit = link.alpha.is_some() || link.beta.is_some();
    let sources = link.turbulence.is_some() as u8 + explicit as u8;
    if sources > 1 {
        return Err(ConfigError::field(
            at("turbulence"),
            "give either a preset name or alpha/beta, not both",
        ));
    }
    if let Some(name) = &link.turbulence {
        return TurbulencePreset::from_name(name)
            .map(TurbulencePreset::params)
            .ok_or_else(|| {
                ConfigError::field(
                    at("turbulence"),
                    format!("unknown preset {name:?} (weak, moderate, strong)"),
                )
            });
    }
    if explicit {
        let a = required(&at("alpha"), link.alpha, "together with beta")?;
        let b = required(&at("beta"), link.beta, "together with alpha")?;
        return GammaGammaParams::unit(a, b).map_err(core_err(at("alpha")));
    }
    let d = required(
        &at("distance"),
        link.distance,
        "when no turbulence preset or alpha/beta is given",
    )?;
    match cfg.scenario {
        ScenarioKind::FsoCascade | ScenarioKind::FsoParallel => {
            let cn2 = required(
                "atmosphere.cn2",
                cfg.atmosphere.cn2,
                "for physical turbulence",
            )?;
            let lambda = required(
                "atmosphere.wavelength",
                cfg.atmosphere.wavelength,
                "for physical turbulence",
            )?;
            fso_gg_params(rytov_variance(cn2, lambda, d)).map_err(core_err(at("distance")))
        }
        ScenarioKind::ThzCascade => {
            let f = required(
                "atmosphere.frequency",
                cfg.atmosphere.frequency,
                "for physical turbulence",
            )?;
            let b = required(&at("aperture"), link.aperture, "for aperture averaging")?;
            let cn2 = hill_cn2(&thz_atmosphere(cfg)?);
            let lambda = SPEED_OF_LIGHT / f;
            thz_gg_params(rytov_variance(cn2, lambda, d), b, lambda, d)
                .map_err(core_err(at("distance")))
        }
    }
}

fn pointing(i: usize, link: &LinkConfig) -> Result<Option<PointingErrorParams>, ConfigError> {
    let at = |f: &str| format!("links[{i}].{f}");
    let explicit = link.xi.is_some() || link.a_o.is_some();
    if !link.misaligned {
        if explicit {
            return Err(ConfigError::field(
                at(if link.xi.is_some() { "xi" } else { "a_o" }),
                "pointing parameters on a link without misaligned = true",
            ));
        }
        return Ok(None);
    }
    if explicit {
        let xi = required(&at("xi"), link.xi, "together with a_o")?;
        let a_o = required(&at("a_o"), link.a_o, "together with xi")?;
        return PointingErrorParams::new(xi, a_o)
            .map(Some)
            .map_err(core_err(at("xi")));
    }
    let why = "for a misaligned link without xi/a_o";
    let b = match link.pointing_aperture {
        Some(_) => required(&at("pointing_aperture"), link.pointing_aperture, why)?,
        None => required(&at("aperture"), link.aperture, why)?,
    };
    let w_d = required(&at("beam_waist"), link.beam_waist, why)?;
    let sigma = required(&at("jitter"), link.jitter, why)?;
    let d = positive(&at("distance"), link.distance)?.unwrap_or(1.0);
    FsoLinkGeometry::new(d, b, w_d, sigma, true)
        .and_then(|g| g.pointing())
        .map(Some)
        .map_err(core_err(at("jitter")))
}

/// The composite channel of the listed links (one branch for parallel scenarios).
pub fn channel(cfg: &ScenarioConfig) -> Result<CompositeProduct, ConfigError> {
    let mut gg = Vec::with_capacity(cfg.links.len());
    let mut pe = Vec::new();
    for (i, link) in cfg.links.iter().enumerate() {
        gg.push(turbulence(cfg, i, link)?);
        if let Some(p) = pointing(i, link)? {
            pe.push(p);
        }
    }
    CompositeProduct::new(gg, pe).map_err(core_err("links"))
}

/// γ_th from either `gamma_th` or `spectral_efficiency`; defaults to 1.
pub fn gamma_th(cfg: &ScenarioConfig) -> Result<f64, ConfigError> {
    let t = &cfg.transceiver;
    match (t.gamma_th, t.spectral_efficiency) {
        (Some(_), Some(_)) => Err(ConfigError::field(
            "transceiver.spectral_efficiency",
            "give either gamma_th or spectral_efficiency",
        )),
        (Some(g), None) => required("transceiver.gamma_th", Some(g), ""),
        (None, Some(se)) => {
            required("transceiver.spectral_efficiency", Some(se), "").map(|se| se.exp2() - 1.0)
        }
        (None, None) => Ok(1.0),
    }
}

fn kappa(field: &str, v: Option<f64>) -> Result<f64, ConfigError> {
    let k = v.unwrap_or(0.0);
    if k >= 0.0 && k.is_finite() {
        Ok(k)
    } else {
        Err(ConfigError::field(field, format!("must be >= 0, got {k}")))
    }
}

/// Average SNR γ_s from transmit power, link budget and receiver chain.
fn budget_gamma_s(cfg: &ScenarioConfig, power: f64) -> Result<f64, ConfigError> {
    let t = &cfg.transceiver;
    let why = "when the operating point comes from transceiver.power";
    let f = required("atmosphere.frequency", cfg.atmosphere.frequency, why)?;
    let atm = thz_atmosphere(cfg)?;
    let mut d_list = Vec::new();
    let mut b_list = Vec::new();
    for (i, l) in cfg.links.iter().enumerate() {
        d_list.push(required(&format!("links[{i}].distance"), l.distance, why)?);
        b_list.push(required(&format!("links[{i}].aperture"), l.aperture, why)?);
    }
    let reflection = t.reflection.unwrap_or(1.0);
    let budget = ThzLinkBudget {
        f,
        r_list: vec![reflection; d_list.len() - 1],
        d_list,
        b_list,
        g_s: required("transceiver.antenna_gain_tx", t.antenna_gain_tx, why)?,
        g_d: required("transceiver.antenna_gain_rx", t.antenna_gain_rx, why)?,
        kappa_t: kappa("transceiver.kappa_t", t.kappa_t)?,
        kappa_r: kappa("transceiver.kappa_r", t.kappa_r)?,
        absorption: molecular_absorption(f, &atm).kappa,
    };
    let n_o = match t.noise_power {
        Some(n) => required("transceiver.noise_power", Some(n), "")?,
        None => {
            let why = "unless transceiver.noise_power is given";
            let chain = ReceiverChain {
                lna_gain: required("transceiver.lna_gain", t.lna_gain, why)?,
                lna_noise_factor: required(
                    "transceiver.lna_noise_factor",
                    t.lna_noise_factor,
                    why,
                )?,
                mixer_loss: required("transceiver.mixer_loss", t.mixer_loss, why)?,
                mixer_noise_factor: required(
                    "transceiver.mixer_noise_factor",
                    t.mixer_noise_factor,
                    why,
                )?,
                misc_loss: required("transceiver.misc_loss", t.misc_loss, why)?,
            };
            let bw = required("transceiver.bandwidth", t.bandwidth, why)?;
            chain.noise_power(atm.temperature, bw)
        }
    };
    gamma_s(&budget, power, n_o).map_err(core_err("transceiver.power"))
}

impl Model {
    pub fn build(cfg: &ScenarioConfig) -> Result<Model, ConfigError> {
        let ch = channel(cfg)?;
        let t = &cfg.transceiver;
        match cfg.scenario {
            ScenarioKind::FsoCascade => Ok(Model::FsoCascade {
                channel: ch,
                ratio: required("transceiver.ratio", t.ratio, "for fso_cascade")?,
            }),
            ScenarioKind::FsoParallel => {
                let branches = t.branches.unwrap_or(0);
                if branches == 0 {
                    return Err(ConfigError::field(
                        "transceiver.branches",
                        "at least one parallel branch is required",
                    ));
                }
                Ok(Model::FsoParallel {
                    branch: ch,
                    branches,
                    ratio: required("transceiver.ratio", t.ratio, "for fso_parallel")?,
                })
            }
            ScenarioKind::ThzCascade => {
                let g_th = gamma_th(cfg)?;
                let given = [t.ratio.is_some(), t.gamma_s.is_some(), t.power.is_some()];
                let ratio = match given {
                    [true, false, false] => required("transceiver.ratio", t.ratio, "")?,
                    [false, true, false] => required("transceiver.gamma_s", t.gamma_s, "")? / g_th,
                    [false, false, true] => {
                        let p = required("transceiver.power", t.power, "")?;
                        budget_gamma_s(cfg, p)? / g_th
                    }
                    _ => {
                        return Err(ConfigError::field(
                            "transceiver",
                            "give exactly one of ratio, gamma_s or power",
                        ))
                    }
                };
                Ok(Model::ThzCascade {
                    channel: ch,
                    ratio,
                    gamma_th: g_th,
                    kappa_t: kappa("transceiver.kappa_t", t.kappa_t)?,
                    kappa_r: kappa("transceiver.kappa_r", t.kappa_r)?,
                })
            }
        }
    }
}
