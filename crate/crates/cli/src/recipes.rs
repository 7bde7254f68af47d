//! Scenario files for every published curve, one file per curve.
//!
//! Surfaces use an `outer` grid and come out as long-format CSV.

use std::fs;
use std::io;
use std::path::Path;

use crate::config::{
    AtmosphereConfig, LinkConfig, Scale, ScenarioConfig, ScenarioKind, SweepConfig,
    TransceiverConfig, CONFIG_VERSION,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Recipe {
    pub figure: &'static str,
    pub curve: String,
    pub config: ScenarioConfig,
}

impl Recipe {
    pub fn file_name(&self) -> String {
        format!("{}/{}.toml", self.figure, self.curve)
    }
}

fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

fn preset(name: &str) -> LinkConfig {
    LinkConfig {
        turbulence: Some(name.to_string()),
        ..Default::default()
    }
}

/// Optical hop with unit aperture radius; `jitter` is σ_s/b.
fn fso_misaligned(name: &str, w_d: f64, jitter: f64) -> LinkConfig {
    LinkConfig {
        aperture: Some(1.0),
        beam_waist: Some(w_d),
        jitter: Some(jitter),
        misaligned: true,
        ..preset(name)
    }
}

const THZ_APERTURE: f64 = 0.3;
const THZ_POINTING_APERTURE: f64 = 0.1;
const THZ_BEAM_WAIST: f64 = 0.1;

fn thz_link(d: f64) -> LinkConfig {
    LinkConfig {
        distance: Some(d),
        aperture: Some(THZ_APERTURE),
        ..Default::default()
    }
}

fn thz_misaligned(d: f64, jitter: f64) -> LinkConfig {
    LinkConfig {
        pointing_aperture: Some(THZ_POINTING_APERTURE),
        beam_waist: Some(THZ_BEAM_WAIST),
        jitter: Some(jitter),
        misaligned: true,
        ..thz_link(d)
    }
}

fn thz_atmosphere() -> AtmosphereConfig {
    AtmosphereConfig {
        frequency: Some(300e9),
        ..Default::default()
    }
}

fn grid(variable: &str, start: f64, stop: f64, points: usize, scale: Scale) -> SweepConfig {
    SweepConfig {
        variable: variable.to_string(),
        start,
        stop,
        points,
        scale,
    }
}

fn ratio_sweep(lo_db: f64, hi_db: f64) -> SweepConfig {
    let points = ((hi_db - lo_db) / 2.0).round() as usize + 1;
    grid("transceiver.ratio", db(lo_db), db(hi_db), points, Scale::Db)
}

fn scenario(
    scenario: ScenarioKind,
    title: String,
    links: Vec<LinkConfig>,
    transceiver: TransceiverConfig,
    sweep: SweepConfig,
) -> ScenarioConfig {
    ScenarioConfig {
        config_version: CONFIG_VERSION,
        scenario,
        title: Some(title),
        atmosphere: AtmosphereConfig::default(),
        transceiver,
        sweep: Some(sweep),
        outer: None,
        links,
    }
}

fn fso(
    title: String,
    links: Vec<LinkConfig>,
    sweep: SweepConfig,
    ratio: Option<f64>,
) -> ScenarioConfig {
    scenario(
        ScenarioKind::FsoCascade,
        title,
        links,
        TransceiverConfig {
            ratio,
            ..Default::default()
        },
        sweep,
    )
}

fn fig3() -> Vec<Recipe> {
    [
        ("weak_weak", "weak", "weak"),
        ("weak_strong", "weak", "strong"),
        ("strong_strong", "strong", "strong"),
        ("strong_moderate", "strong", "moderate"),
        ("moderate_moderate", "moderate", "moderate"),
    ]
    .into_iter()
    .map(|(curve, a, b)| Recipe {
        figure: "fig3",
        curve: curve.to_string(),
        config: fso(
            format!("outage vs rho_s/rho_th, N = 2, L = 0, {a} + {b} turbulence"),
            vec![preset(a), preset(b)],
            ratio_sweep(10.0, 50.0),
            None,
        ),
    })
    .collect()
}

fn fig4() -> Vec<Recipe> {
    let mut out = Vec::new();
    for name in ["weak", "strong"] {
        for n in 1..=4 {
            out.push(Recipe {
                figure: "fig4",
                curve: format!("{name}_n{n}"),
                config: fso(
                    format!("outage vs rho_s/rho_th, N = {n}, L = 0, {name} turbulence"),
                    vec![preset(name); n],
                    ratio_sweep(10.0, 50.0),
                    None,
                ),
            });
        }
    }
    out
}

fn fig5() -> Vec<Recipe> {
    let mut config = fso(
        "outage vs sigma_s1/b and sigma_s2/b, N = L = 2, weak, b/w_d = 0.5, 40 dB".to_string(),
        vec![fso_misaligned("weak", 2.0, 0.1); 2],
        grid("links[1].jitter", 0.1, 0.6, 11, Scale::Linear),
        Some(db(40.0)),
    );
    config.outer = Some(grid("links[0].jitter", 0.1, 0.6, 11, Scale::Linear));
    vec![Recipe {
        figure: "fig5",
        curve: "surface".to_string(),
        config,
    }]
}

fn fig6() -> Vec<Recipe> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for (tag, b_over_w) in [("half", 0.5), ("equal", 1.0), ("twice", 2.0)] {
            out.push(Recipe {
                figure: "fig6",
                curve: format!("nl{n}_b_w_{tag}"),
                config: fso(
                    format!("outage vs sigma_s/b, N = L = {n}, b/w_d = {b_over_w}, weak, 40 dB"),
                    vec![fso_misaligned("weak", 1.0 / b_over_w, 0.05); n],
                    grid("links.jitter", 0.05, 0.6, 12, Scale::Linear),
                    Some(db(40.0)),
                ),
            });
        }
        out.push(Recipe {
            figure: "fig6",
            curve: format!("nl{n}_aligned"),
            config: fso(
                format!("benchmark without misalignment, N = {n}, weak, 40 dB"),
                vec![
                    LinkConfig {
                        jitter: Some(0.05),
                        ..preset("weak")
                    };
                    n
                ],
                grid("links.jitter", 0.05, 0.6, 12, Scale::Linear),
                Some(db(40.0)),
            ),
        });
    }
    out
}

fn n_l() -> Vec<Recipe> {
    let mut out = Vec::new();
    for (n, l) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (3, 3)] {
        let links = (0..n)
            .map(|i| {
                if i < l {
                    fso_misaligned("weak", 2.0, 0.1)
                } else {
                    preset("weak")
                }
            })
            .collect();
        out.push(Recipe {
            figure: "n_l",
            curve: format!("n{n}_l{l}"),
            config: fso(
                format!(
                    "outage vs rho_s/rho_th, N = {n}, L = {l}, weak, sigma_s/b = 0.1, b/w_d = 0.5"
                ),
                links,
                ratio_sweep(10.0, 50.0),
                None,
            ),
        });
    }
    out
}

fn parallel(title: String, branch: Vec<LinkConfig>, branches: usize) -> ScenarioConfig {
    scenario(
        ScenarioKind::FsoParallel,
        title,
        branch,
        TransceiverConfig {
            branches: Some(branches),
            ..Default::default()
        },
        ratio_sweep(0.0, 40.0),
    )
}

fn fig7() -> Vec<Recipe> {
    ["weak", "moderate", "strong"]
        .into_iter()
        .map(|name| Recipe {
            figure: "fig7",
            curve: name.to_string(),
            config: parallel(
                format!("parallel bound vs rho_s/rho_th, 2 branches of N = L = 2, {name}, sigma_s/b = 0.1, b/w_d = 0.5"),
                vec![fso_misaligned(name, 2.0, 0.1); 2],
                2,
            ),
        })
        .collect()
}

fn fig8() -> Vec<Recipe> {
    (1..=4)
        .map(|nb| Recipe {
            figure: "fig8",
            curve: format!("branches{nb}"),
            config: parallel(
                format!("parallel bound vs rho_s/rho_th, {nb} branches of N = L = 2, weak, sigma_s/b = 0.1, b/w_d = 0.5"),
                vec![fso_misaligned("weak", 2.0, 0.1); 2],
                nb,
            ),
        })
        .collect()
}

fn thz(
    title: String,
    links: Vec<LinkConfig>,
    transceiver: TransceiverConfig,
    sweep: SweepConfig,
) -> ScenarioConfig {
    ScenarioConfig {
        atmosphere: thz_atmosphere(),
        ..scenario(ScenarioKind::ThzCascade, title, links, transceiver, sweep)
    }
}

fn fig9() -> Vec<Recipe> {
    let mut config = thz(
        "outage vs d1 and d2, N = 2, L = 0, gamma_s/gamma_th = 25 dB".to_string(),
        vec![thz_link(100.0); 2],
        TransceiverConfig {
            ratio: Some(db(25.0)),
            ..Default::default()
        },
        grid("links[1].distance", 100.0, 200.0, 11, Scale::Linear),
    );
    config.outer = Some(grid("links[0].distance", 100.0, 200.0, 11, Scale::Linear));
    vec![Recipe {
        figure: "fig9",
        curve: "surface".to_string(),
        config,
    }]
}

fn fig10() -> Vec<Recipe> {
    let mut out = Vec::new();
    let jitter = grid("links.jitter", 1e-3, 0.1, 21, Scale::Log);
    for n in [2, 3] {
        for r in [25.0, 30.0] {
            let t = TransceiverConfig {
                ratio: Some(db(r)),
                ..Default::default()
            };
            out.push(Recipe {
                figure: "fig10",
                curve: format!("nl{n}_{r}db"),
                config: thz(
                    format!("outage vs sigma_s, N = L = {n}, gamma_s/gamma_th = {r} dB"),
                    vec![thz_misaligned(100.0, 1e-3); n],
                    t.clone(),
                    jitter.clone(),
                ),
            });
            out.push(Recipe {
                figure: "fig10",
                curve: format!("n{n}_aligned_{r}db"),
                config: thz(
                    format!("benchmark without misalignment, N = {n}, gamma_s/gamma_th = {r} dB"),
                    vec![
                        LinkConfig {
                            jitter: Some(1e-3),
                            ..thz_link(100.0)
                        };
                        n
                    ],
                    t,
                    jitter.clone(),
                ),
            });
        }
    }
    out
}

fn fig11() -> Vec<Recipe> {
    let mut config = thz(
        "outage vs frequency and temperature, N = 2, L = 0, 0 dBW, 50 GHz, 2 bit/s/Hz".to_string(),
        vec![thz_link(100.0); 2],
        TransceiverConfig {
            spectral_efficiency: Some(2.0),
            power: Some(1.0),
            bandwidth: Some(50e9),
            antenna_gain_tx: Some(db(50.0)),
            antenna_gain_rx: Some(db(50.0)),
            reflection: Some(1.0),
            lna_gain: Some(db(35.0)),
            lna_noise_factor: Some(db(1.0)),
            mixer_loss: Some(db(5.0)),
            mixer_noise_factor: Some(db(6.0)),
            misc_loss: Some(db(3.0)),
            ..Default::default()
        },
        grid("atmosphere.frequency", 100e9, 500e9, 81, Scale::Linear),
    );
    config.outer = Some(grid(
        "atmosphere.temperature",
        273.0,
        323.0,
        6,
        Scale::Linear,
    ));
    vec![Recipe {
        figure: "fig11",
        curve: "surface".to_string(),
        config,
    }]
}

fn fig12() -> Vec<Recipe> {
    let mut config = thz(
        "outage vs kappa_t and kappa_r, N = L = 2, sigma_s = 1 mm, 25 dB, gamma_th = 0 dB"
            .to_string(),
        vec![thz_misaligned(100.0, 1e-3); 2],
        TransceiverConfig {
            ratio: Some(db(25.0)),
            gamma_th: Some(1.0),
            ..Default::default()
        },
        grid("transceiver.kappa_r", 0.0, 0.4, 9, Scale::Linear),
    );
    config.outer = Some(grid("transceiver.kappa_t", 0.0, 0.4, 9, Scale::Linear));
    vec![Recipe {
        figure: "fig12",
        curve: "surface".to_string(),
        config,
    }]
}

fn fig13() -> Vec<Recipe> {
    let mut out = Vec::new();
    for gth_db in [0.0, 10.0] {
        for (s_tag, sigma) in [("1mm", 1e-3), ("100mm", 0.1)] {
            for (k_tag, k) in [("ideal", 0.0), ("best", 0.1), ("worst", 0.4)] {
                out.push(Recipe {
                    figure: "fig13",
                    curve: format!("gth{gth_db}db_{s_tag}_{k_tag}"),
                    config: thz(
                        format!("outage vs gamma_s, N = L = 2, gamma_th = {gth_db} dB, sigma_s = {sigma} m, kappa = {k}"),
                        vec![thz_misaligned(100.0, sigma); 2],
                        TransceiverConfig {
                            gamma_th: Some(db(gth_db)),
                            kappa_t: Some(k),
                            kappa_r: Some(k),
                            ..Default::default()
                        },
                        grid("transceiver.gamma_s", 1.0, db(50.0), 26, Scale::Db),
                    ),
                });
            }
        }
    }
    out
}

pub fn figure_recipes() -> Vec<Recipe> {
    [
        fig3(),
        fig4(),
        fig5(),
        fig6(),
        n_l(),
        fig7(),
        fig8(),
        fig9(),
        fig10(),
        fig11(),
        fig12(),
        fig13(),
    ]
    .concat()
}

pub fn write_recipes(dir: &Path) -> io::Result<usize> {
    let recipes = figure_recipes();
    for r in &recipes {
        let path = dir.join(r.file_name());
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, r.config.to_toml())?;
    }
    Ok(recipes.len())
}
