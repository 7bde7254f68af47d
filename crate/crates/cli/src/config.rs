//! Scenario configuration files.
//!
//! A config is a TOML document with `config_version = 1`. Any numeric key may
//! be written with a `_db` suffix instead (`ratio_db = 25`); it is converted
//! to the linear field at parse time, so the parsed record only ever holds
//! linear quantities.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    FsoCascade,
    FsoParallel,
    ThzCascade,
}

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub config_version: u32,
    pub scenario: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub atmosphere: AtmosphereConfig,
    #[serde(default, skip_serializing_if = "is_default")]
    pub transceiver: TransceiverConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    /// Second grid for surfaces; rows are emitted outer-major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<SweepConfig>,
    pub links: Vec<LinkConfig>,
}

/// One hop. Turbulence comes from a preset name, from explicit (alpha, beta),
/// or from the physical model (distance plus atmosphere). Misalignment comes
/// from explicit (xi, a_o) or from the geometry (aperture, beam waist, jitter).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turbulence: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// m
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<f64>,
    /// receive aperture radius b in m; aperture averaging for terahertz links
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aperture: Option<f64>,
    /// aperture radius seen by the pointing-error model when it differs from `aperture`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointing_aperture: Option<f64>,
    /// w_d in m
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beam_waist: Option<f64>,
    /// σ_s in m
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<f64>,
    #[serde(default)]
    pub misaligned: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_o: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtmosphereConfig {
    /// m^{-2/3}; for terahertz links this overrides the Hill model
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cn2: Option<f64>,
    /// optical wavelength in m
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<f64>,
    /// carrier frequency in Hz
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency: Option<f64>,
    /// K
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    /// Pa
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pressure: Option<f64>,
    /// percent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub humidity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_q: Option<f64>,
    /// "plus" or "minus"
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hill_sign: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransceiverConfig {
    /// ρ_s/ρ_th (optical) or γ_s/γ_th (terahertz)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_th: Option<f64>,
    /// bit/s/Hz; sets γ_th = 2^se − 1
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral_efficiency: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_r: Option<f64>,
    /// parallel branches
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<usize>,
    /// transmit power in W
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<f64>,
    /// Hz
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antenna_gain_tx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antenna_gain_rx: Option<f64>,
    /// reflection coefficient of every intermediate surface
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflection: Option<f64>,
    /// explicit N_o in W; otherwise taken from the receiver chain
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_power: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lna_gain: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lna_noise_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixer_loss: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixer_noise_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub misc_loss: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
    /// evenly spaced in decibels; start and stop are still linear values
    #[serde(rename = "dB")]
    Db,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepConfig {
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        if n == 1 {
            return vec![self.start];
        }
        let u = |k: usize| k as f64 / (n - 1) as f64;
        let mut g: Vec<f64> = match self.scale {
            Scale::Linear => (0..n)
                .map(|k| self.start + (self.stop - self.start) * u(k))
                .collect(),
            Scale::Log => {
                let (a, b) = (self.start.ln(), self.stop.ln());
                (0..n).map(|k| (a + (b - a) * u(k)).exp()).collect()
            }
            Scale::Db => {
                let (a, b) = (10.0 * self.start.log10(), 10.0 * self.stop.log10());
                (0..n)
                    .map(|k| 10f64.powf((a + (b - a) * u(k)) / 10.0))
                    .collect()
            }
        };
        // pin the end points against rounding in the exp/log round trip
        g[0] = self.start;
        g[n - 1] = self.stop;
        g
    }
}

/// Field reference used by sweeps and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldPath {
    Transceiver(String),
    Atmosphere(String),
    /// `None` applies to every link
    Link(Option<usize>, String),
}

const TRANSCEIVER_FIELDS: &[&str] = &[
    "ratio",
    "gamma_s",
    "gamma_th",
    "spectral_efficiency",
    "kappa_t",
    "kappa_r",
    "power",
    "bandwidth",
    "antenna_gain_tx",
    "antenna_gain_rx",
    "reflection",
    "noise_power",
    "lna_gain",
    "lna_noise_factor",
    "mixer_loss",
    "mixer_noise_factor",
    "misc_loss",
];
const ATMOSPHERE_FIELDS: &[&str] = &[
    "cn2",
    "wavelength",
    "frequency",
    "temperature",
    "pressure",
    "humidity",
    "c_t",
    "a_t",
    "a_q",
];
const LINK_FIELDS: &[&str] = &[
    "alpha",
    "beta",
    "distance",
    "aperture",
    "pointing_aperture",
    "beam_waist",
    "jitter",
    "xi",
    "a_o",
];

impl FieldPath {
    pub fn parse(s: &str) -> Option<FieldPath> {
        let (head, field) = s.split_once('.')?;
        let field = field.to_string();
        match head {
            "transceiver" if TRANSCEIVER_FIELDS.contains(&field.as_str()) => {
                Some(FieldPath::Transceiver(field))
            }
            "atmosphere" if ATMOSPHERE_FIELDS.contains(&field.as_str()) => {
                Some(FieldPath::Atmosphere(field))
            }
            _ if LINK_FIELDS.contains(&field.as_str()) => {
                if head == "links" {
                    return Some(FieldPath::Link(None, field));
                }
                let index = head.strip_prefix("links[")?.strip_suffix(']')?;
                Some(FieldPath::Link(Some(index.parse().ok()?), field))
            }
            _ => None,
        }
    }
}

impl fmt::Display for FieldPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldPath::Transceiver(x) => write!(f, "transceiver.{x}"),
            FieldPath::Atmosphere(x) => write!(f, "atmosphere.{x}"),
            FieldPath::Link(None, x) => write!(f, "links.{x}"),
            FieldPath::Link(Some(i), x) => write!(f, "links[{i}].{x}"),
        }
    }
}

fn slot<'a>(
    cfg: &'a mut ScenarioConfig,
    path: &FieldPath,
    link: usize,
) -> Option<&'a mut Option<f64>> {
    match path {
        FieldPath::Transceiver(f) => {
            let t = &mut cfg.transceiver;
            Some(match f.as_str() {
                "ratio" => &mut t.ratio,
                "gamma_s" => &mut t.gamma_s,
                "gamma_th" => &mut t.gamma_th,
                "spectral_efficiency" => &mut t.spectral_efficiency,
                "kappa_t" => &mut t.kappa_t,
                "kappa_r" => &mut t.kappa_r,
                "power" => &mut t.power,
                "bandwidth" => &mut t.bandwidth,
                "antenna_gain_tx" => &mut t.antenna_gain_tx,
                "antenna_gain_rx" => &mut t.antenna_gain_rx,
                "reflection" => &mut t.reflection,
                "noise_power" => &mut t.noise_power,
                "lna_gain" => &mut t.lna_gain,
                "lna_noise_factor" => &mut t.lna_noise_factor,
                "mixer_loss" => &mut t.mixer_loss,
                "mixer_noise_factor" => &mut t.mixer_noise_factor,
                "misc_loss" => &mut t.misc_loss,
                _ => return None,
            })
        }
        FieldPath::Atmosphere(f) => {
            let a = &mut cfg.atmosphere;
            Some(match f.as_str() {
                "cn2" => &mut a.cn2,
                "wavelength" => &mut a.wavelength,
                "frequency" => &mut a.frequency,
                "temperature" => &mut a.temperature,
                "pressure" => &mut a.pressure,
                "humidity" => &mut a.humidity,
                "c_t" => &mut a.c_t,
                "a_t" => &mut a.a_t,
                "a_q" => &mut a.a_q,
                _ => return None,
            })
        }
        FieldPath::Link(_, f) => {
            let l = cfg.links.get_mut(link)?;
            Some(match f.as_str() {
                "alpha" => &mut l.alpha,
                "beta" => &mut l.beta,
                "distance" => &mut l.distance,
                "aperture" => &mut l.aperture,
                "pointing_aperture" => &mut l.pointing_aperture,
                "beam_waist" => &mut l.beam_waist,
                "jitter" => &mut l.jitter,
                "xi" => &mut l.xi,
                "a_o" => &mut l.a_o,
                _ => return None,
            })
        }
    }
}

impl ScenarioConfig {
    /// Copy with `path` set to `value`.
    pub fn with_value(&self, path: &FieldPath, value: f64) -> ScenarioConfig {
        let mut c = self.clone();
        let links: Vec<usize> = match path {
            FieldPath::Link(None, _) => (0..c.links.len()).collect(),
            FieldPath::Link(Some(i), _) => vec![*i],
            _ => vec![0],
        };
        for i in links {
            if let Some(s) = slot(&mut c, path, i) {
                *s = Some(value);
            }
        }
        c
    }

    /// Every (outer, inner) grid point, outer-major; `None` where no grid is set.
    pub fn points(&self) -> Vec<(Option<f64>, Option<f64>)> {
        let inner: Vec<Option<f64>> = match &self.sweep {
            Some(s) => s.grid().into_iter().map(Some).collect(),
            None => vec![None],
        };
        let outer: Vec<Option<f64>> = match &self.outer {
            Some(s) => s.grid().into_iter().map(Some).collect(),
            None => vec![None],
        };
        outer
            .iter()
            .flat_map(|&o| inner.iter().map(move |&i| (o, i)))
            .collect()
    }

    /// The record at one grid point.
    pub fn at(&self, outer: Option<f64>, inner: Option<f64>) -> ScenarioConfig {
        let mut c = self.clone();
        for (grid, v) in [(&self.outer, outer), (&self.sweep, inner)] {
            if let (Some(g), Some(v)) = (grid, v) {
                if let Some(p) = FieldPath::parse(&g.variable) {
                    c = c.with_value(&p, v);
                }
            }
        }
        c
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("scenario records always serialize")
    }
}

/// A configuration problem tied, where possible, to a source line.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, &self.field) {
            (Some(l), Some(k)) => write!(f, "line {l}, field `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "field `{k}`: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

impl ConfigError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Segment {
    Key(String),
    Index(usize),
}

fn parse_segments(field: &str) -> Vec<Segment> {
    let mut out = Vec::new();
    for part in field.split('.') {
        let mut rest = part;
        if let Some(open) = rest.find('[') {
            out.push(Segment::Key(rest[..open].to_string()));
            rest = &rest[open..];
            while let Some(close) = rest.find(']') {
                if let Ok(i) = rest[1..close].parse() {
                    out.push(Segment::Index(i));
                }
                rest = &rest[close + 1..];
            }
        } else if !rest.is_empty() {
            out.push(Segment::Key(rest.to_string()));
        }
    }
    out
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())]
        .bytes()
        .filter(|&b| b == b'\n')
        .count()
        + 1
}

/// Byte span of the deepest element of `path` present in the document; a
/// missing key falls back to its enclosing table, and `k` also matches `k_db`.
fn locate(src: &str, path: &[Segment]) -> Option<Range<usize>> {
    use toml::de::{DeTable, DeValue};
    let doc = DeTable::parse(src).ok()?;
    let mut table: &DeTable = doc.get_ref();
    let mut best: Option<Range<usize>> = None;
    let mut pending: Option<&DeValue> = None;
    for seg in path {
        match seg {
            Segment::Key(k) => {
                if let Some(DeValue::Table(t)) = pending {
                    table = t;
                }
                let db = format!("{k}_db");
                let hit = table.iter().find(|(key, _)| {
                    key.get_ref().as_ref() == k.as_str() || key.get_ref().as_ref() == db
                });
                match hit {
                    Some((key, value)) => {
                        best = Some(key.span());
                        pending = Some(value.get_ref());
                    }
                    None => return best,
                }
            }
            Segment::Index(i) => match pending {
                Some(DeValue::Array(a)) => match a.get(*i) {
                    Some(v) => {
                        best = Some(v.span());
                        pending = Some(v.get_ref());
                    }
                    None => return best,
                },
                _ => return best,
            },
        }
    }
    best
}

impl ConfigError {
    /// Fills in the line number from the field path.
    pub fn located(mut self, src: &str) -> Self {
        if self.line.is_none() {
            if let Some(f) = &self.field {
                if let Some(span) = locate(src, &parse_segments(f)) {
                    self.line = Some(line_of(src, span.start));
                }
            }
        }
        self
    }
}

/// Replaces every `key_db = v` by `key = 10^(v/10)`, recursively.
fn convert_db(table: &mut toml::Table, prefix: &str) -> Result<(), ConfigError> {
    let keys: Vec<String> = table.keys().cloned().collect();
    for key in keys {
        let here = if prefix.is_empty() {
            key.clone()
        } else {
            format!("{prefix}.{key}")
        };
        if let Some(base) = key.strip_suffix("_db") {
            let v = match &table[&key] {
                toml::Value::Float(f) => *f,
                toml::Value::Integer(i) => *i as f64,
                _ => return Err(ConfigError::field(here, "a `_db` field must be a number")),
            };
            if table.contains_key(base) {
                return Err(ConfigError::field(
                    here,
                    format!("both `{base}` and `{key}` are given"),
                ));
            }
            table.remove(&key);
            table.insert(base.to_string(), toml::Value::Float(10f64.powf(v / 10.0)));
            continue;
        }
        match table.get_mut(&key) {
            Some(toml::Value::Table(t)) => convert_db(t, &here)?,
            Some(toml::Value::Array(items)) => {
                for (i, item) in items.iter_mut().enumerate() {
                    if let toml::Value::Table(t) = item {
                        convert_db(t, &format!("{here}[{i}]"))?;
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

/// Integers are accepted wherever a real number is expected.
fn widen_integers(v: &mut toml::Value, key: Option<&str>) {
    const INTEGER_KEYS: &[&str] = &["config_version", "points", "branches"];
    match v {
        toml::Value::Integer(i) if !key.is_some_and(|k| INTEGER_KEYS.contains(&k)) => {
            *v = toml::Value::Float(*i as f64);
        }
        toml::Value::Table(t) => {
            for (k, x) in t.iter_mut() {
                widen_integers(x, Some(k));
            }
        }
        toml::Value::Array(a) => {
            for x in a {
                widen_integers(x, None);
            }
        }
        _ => {}
    }
}

fn path_string(p: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment as S;
    let mut out = String::new();
    for seg in p.iter() {
        match seg {
            S::Seq { index } => out.push_str(&format!("[{index}]")),
            S::Map { key } | S::Enum { variant: key } => {
                if !out.is_empty() {
                    out.push('.');
                }
                out.push_str(key);
            }
            S::Unknown => {}
        }
    }
    out
}

/// Parses and validates a config; every error carries a line where one exists.
pub fn parse_config(src: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut table: toml::Table = src.parse().map_err(|e: toml::de::Error| ConfigError {
        line: e.span().map(|s| line_of(src, s.start)),
        field: None,
        message: e.message().trim().to_string(),
    })?;
    convert_db(&mut table, "").map_err(|e| e.located(src))?;
    let mut value = toml::Value::Table(table);
    widen_integers(&mut value, None);
    let cfg: ScenarioConfig = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = path_string(e.path());
        let message = e.inner().message().trim().to_string();
        let field = path;
        ConfigError {
            line: None,
            field: (!field.is_empty()).then_some(field),
            message,
        }
        .located(src)
    })?;
    validate(&cfg).map_err(|e| e.located(src))?;
    Ok(cfg)
}

fn validate_grid(g: &SweepConfig, key: &str, cfg: &ScenarioConfig) -> Result<(), ConfigError> {
    let path = FieldPath::parse(&g.variable).ok_or_else(|| {
        ConfigError::field(
            format!("{key}.variable"),
            format!("`{}` does not name a numeric config field", g.variable),
        )
    })?;
    if let FieldPath::Link(Some(i), _) = path {
        if i >= cfg.links.len() {
            return Err(ConfigError::field(
                format!("{key}.variable"),
                format!("link index {i} but only {} links", cfg.links.len()),
            ));
        }
    }
    if g.points == 0 {
        return Err(ConfigError::field(
            format!("{key}.points"),
            "at least one point is required",
        ));
    }
    if !(g.start.is_finite() && g.stop.is_finite()) {
        return Err(ConfigError::field(
            format!("{key}.start"),
            "grid bounds must be finite",
        ));
    }
    if g.points == 1 && g.start != g.stop {
        return Err(ConfigError::field(
            format!("{key}.stop"),
            "a single-point grid needs start == stop",
        ));
    }
    if g.points > 1 && g.stop <= g.start {
        return Err(ConfigError::field(
            format!("{key}.stop"),
            "grid must be strictly increasing (stop > start)",
        ));
    }
    if g.scale != Scale::Linear && g.start <= 0.0 {
        return Err(ConfigError::field(
            format!("{key}.start"),
            "log and dB grids need a positive start",
        ));
    }
    let values = g.grid();
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ConfigError::field(
            format!("{key}.points"),
            "grid is not strictly increasing at double precision",
        ));
    }
    Ok(())
}

fn validate(cfg: &ScenarioConfig) -> Result<(), ConfigError> {
    if cfg.config_version != CONFIG_VERSION {
        return Err(ConfigError::field(
            "config_version",
            format!(
                "unsupported version {} (expected {CONFIG_VERSION})",
                cfg.config_version
            ),
        ));
    }
    if cfg.links.is_empty() {
        return Err(ConfigError::field("links", "at least one link is required"));
    }
    if let Some(g) = &cfg.sweep {
        validate_grid(g, "sweep", cfg)?;
    }
    if let Some(g) = &cfg.outer {
        validate_grid(g, "outer", cfg)?;
        if cfg.sweep.is_none() {
            return Err(ConfigError::field(
                "outer",
                "an outer grid needs a [sweep] grid",
            ));
        }
        if cfg.sweep.as_ref().is_some_and(|s| s.variable == g.variable) {
            return Err(ConfigError::field(
                "outer.variable",
                "outer and inner grids sweep the same field",
            ));
        }
    }
    // every grid point must describe a valid channel
    for (o, i) in cfg.points() {
        crate::model::channel(&cfg.at(o, i))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
config_version = 1
scenario = "fso_cascade"

[transceiver]
ratio_db = 30

[[links]]
turbulence = "weak"

[[links]]
alpha = 4.942
beta = 1.231
misaligned = true
aperture = 1.0
beam_waist = 2
jitter = 0.1
"#;

    #[test]
    fn db_suffix_converts_at_parse_time() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.transceiver.ratio, Some(1000.0));
        assert_eq!(c.links[1].beam_waist, Some(2.0));
    }

    #[test]
    fn both_spellings_rejected() {
        let src = MINIMAL.replace("ratio_db = 30", "ratio_db = 30\nratio = 3");
        let e = parse_config(&src).unwrap_err();
        assert_eq!(e.line, Some(6), "{e}");
    }

    #[test]
    fn unknown_field_points_at_its_line() {
        let src = MINIMAL.replace("jitter = 0.1", "jiter = 0.1");
        let e = parse_config(&src).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("links[1].jiter"));
        assert_eq!(e.line, Some(17), "{e}");
    }

    #[test]
    fn syntax_error_has_line() {
        let e = parse_config("config_version = 1\nscenario = \n").unwrap_err();
        assert_eq!(e.line, Some(2), "{e}");
    }

    #[test]
    fn grid_shapes() {
        let g = SweepConfig {
            variable: "transceiver.ratio".into(),
            start: 10.0,
            stop: 1000.0,
            points: 3,
            scale: Scale::Db,
        };
        let v = g.grid();
        assert_eq!(v[0], 10.0);
        assert!((v[1] - 100.0).abs() < 1e-12);
        assert_eq!(v[2], 1000.0);
        let lin = SweepConfig {
            scale: Scale::Linear,
            ..g.clone()
        }
        .grid();
        assert_eq!(lin, vec![10.0, 505.0, 1000.0]);
    }

    #[test]
    fn field_paths() {
        assert_eq!(
            FieldPath::parse("links[1].jitter"),
            Some(FieldPath::Link(Some(1), "jitter".into()))
        );
        assert_eq!(
            FieldPath::parse("links.jitter"),
            Some(FieldPath::Link(None, "jitter".into()))
        );
        assert_eq!(
            FieldPath::parse("transceiver.ratio"),
            Some(FieldPath::Transceiver("ratio".into()))
        );
        assert_eq!(FieldPath::parse("transceiver.branches"), None);
        assert_eq!(FieldPath::parse("links.colour"), None);
        assert_eq!(FieldPath::parse("ratio"), None);
        let p = FieldPath::Link(Some(2), "xi".into());
        assert_eq!(FieldPath::parse(&p.to_string()), Some(p.clone()));
    }

    #[test]
    fn sweep_must_name_a_field_and_increase() {
        let src = |variable: &str, stop: &str| {
            format!(
                "config_version = 1\nscenario = \"fso_cascade\"\n\n[sweep]\nvariable = \"{variable}\"\n\
                 start = 1\nstop = {stop}\npoints = 2\nscale = \"linear\"\n\n[[links]]\nturbulence = \"weak\"\n"
            )
        };
        let e = parse_config(&src("transceiver.colour", "2")).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("sweep.variable"), "{e}");
        assert_eq!(e.line, Some(5), "{e}");
        let e = parse_config(&src("transceiver.ratio", "0.5")).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("sweep.stop"), "{e}");
        assert_eq!(e.line, Some(7), "{e}");
        assert!(parse_config(&src("transceiver.ratio", "2")).is_ok());
    }
}
