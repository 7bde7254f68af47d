//! Physical link descriptions turned into fading parameters and
//! deterministic gains.

use std::f64::consts::PI;

use crate::distributions::{GammaGammaParams, PointingErrorParams};
use crate::specfun::erf_fn;
use crate::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// C_n² used by the default terahertz pipeline (m^{-2/3}).
pub const DEFAULT_THZ_CN2: f64 = 2.3e-9;

/// Absorption coefficient quoted at 300 GHz and standard conditions (1/m).
pub const KAPPA_ANCHOR: f64 = 5.8268e-4;
pub const KAPPA_ANCHOR_FREQUENCY: f64 = 300e9;

/// Frequency band over which the absorption model is trusted (Hz).
pub const ABSORPTION_BAND: (f64, f64) = (100e9, 500e9);

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// Named turbulence fixtures, stored directly as (α, β).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurbulencePreset {
    Weak,
    Moderate,
    Strong,
}

impl TurbulencePreset {
    pub fn alpha_beta(self) -> (f64, f64) {
        match self {
            TurbulencePreset::Weak => (10.02, 2.98),
            TurbulencePreset::Moderate => (2.53, 3.02),
            TurbulencePreset::Strong => (4.942, 1.231),
        }
    }

    pub fn params(self) -> GammaGammaParams {
        let (a, b) = self.alpha_beta();
        GammaGammaParams::unit(a, b).expect("preset parameters are valid")
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "weak" => Some(TurbulencePreset::Weak),
            "moderate" => Some(TurbulencePreset::Moderate),
            "strong" => Some(TurbulencePreset::Strong),
            _ => None,
        }
    }
}

/// 1.23·C_n²·k^{7/6}·d^{11/6}
pub fn rytov_variance(cn2: f64, lambda: f64, d: f64) -> f64 {
    let k = 2.0 * PI / lambda;
    1.23 * cn2 * k.powf(7.0 / 6.0) * d.powf(11.0 / 6.0)
}

fn shape_from_exponent(e: f64) -> f64 {
    1.0 / e.exp_m1()
}

/// Plane-wave (α, β) for a given Rytov variance, Ω = 1.
pub fn fso_gg_params(sigma_r2: f64) -> Result<GammaGammaParams> {
    positive("sigma_r2", sigma_r2)?;
    let s125 = sigma_r2.powf(1.2);
    let ea = 0.49 * sigma_r2 / (1.0 + 1.11 * s125).powf(7.0 / 6.0);
    let eb = 0.51 * sigma_r2 / (1.0 + 0.69 * s125).powf(5.0 / 6.0);
    GammaGammaParams::unit(shape_from_exponent(ea), shape_from_exponent(eb))
}

/// D = √(πb²/(2λd))
pub fn aperture_parameter(b: f64, lambda: f64, d: f64) -> f64 {
    (PI * b * b / (2.0 * lambda * d)).sqrt()
}

/// Aperture-averaged (α, β) for the terahertz links, Ω = 1.
pub fn thz_gg_params(sigma_r2: f64, b: f64, lambda: f64, d: f64) -> Result<GammaGammaParams> {
    positive("sigma_r2", sigma_r2)?;
    positive("b", b)?;
    positive("lambda", lambda)?;
    positive("d", d)?;
    let d2 = aperture_parameter(b, lambda, d).powi(2);
    let s125 = sigma_r2.powf(1.2);
    let ea = 0.49 * sigma_r2 / (1.0 + 0.65 * d2 + 1.11 * s125).powf(7.0 / 6.0);
    let eb = 0.51 * sigma_r2 * (1.0 + 0.69 * s125).powf(-5.0 / 6.0)
        / (1.0 + 0.9 * d2 + 0.62 * d2 * s125);
    GammaGammaParams::unit(shape_from_exponent(ea), shape_from_exponent(eb))
}

/// Rytov variance at which the plane-wave α equals `alpha`, by bisection
/// in log σ_R². α decreases monotonically on (0, ~1.3]; the root on that
/// branch is returned when it exists, otherwise the one past the minimum.
pub fn sigma_r2_for_alpha(alpha: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    let f = |ln_s: f64| fso_gg_params(ln_s.exp()).map(|p| p.alpha - alpha);
    // scan for a sign change on a log grid
    let grid: Vec<f64> = (0..=400).map(|i| -12.0 + i as f64 * 0.04).collect();
    let mut prev = (grid[0], f(grid[0])?);
    for &g in &grid[1..] {
        let cur = (g, f(g)?);
        if prev.1.signum() != cur.1.signum() {
            let (mut lo, mut hi) = (prev.0, cur.0);
            let lo_sign = prev.1.signum();
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(mid)?.signum() == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok((0.5 * (lo + hi)).exp());
        }
        prev = cur;
    }
    Err(Error::InvalidParameter(format!(
        "no Rytov variance in [e^-12, e^4] gives alpha = {alpha}"
    )))
}

/// One reflecting hop of the optical cascade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsoLinkGeometry {
    pub d: f64,
    pub b: f64,
    pub w_d: f64,
    pub sigma_s: f64,
    pub has_misalignment: bool,
}

impl FsoLinkGeometry {
    pub fn new(d: f64, b: f64, w_d: f64, sigma_s: f64, has_misalignment: bool) -> Result<Self> {
        positive("d", d)?;
        positive("b", b)?;
        positive("w_d", w_d)?;
        positive("sigma_s", sigma_s)?;
        Ok(FsoLinkGeometry {
            d,
            b,
            w_d,
            sigma_s,
            has_misalignment,
        })
    }

    pub fn upsilon(&self) -> f64 {
        PI.sqrt() * self.b / (2f64.sqrt() * self.w_d)
    }

    pub fn a_o(&self) -> f64 {
        erf_fn(self.upsilon()).powi(2)
    }

    pub fn w_eq2(&self) -> f64 {
        let v = self.upsilon();
        self.w_d * self.w_d * PI.sqrt() * erf_fn(v) / (2.0 * v * (-v * v).exp())
    }

    pub fn xi(&self) -> f64 {
        self.w_eq2() / (4.0 * self.sigma_s * self.sigma_s)
    }

    pub fn pointing(&self) -> Result<PointingErrorParams> {
        PointingErrorParams::new(self.xi(), self.a_o())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsoAtmosphere {
    pub cn2: f64,
    pub lambda: f64,
    /// dB per metre
    pub alpha_weather: f64,
    pub rho: f64,
}

impl FsoAtmosphere {
    pub fn new(cn2: f64, lambda: f64, alpha_weather: f64, rho: f64) -> Result<Self> {
        positive("cn2", cn2)?;
        positive("lambda", lambda)?;
        if !(alpha_weather >= 0.0 && alpha_weather.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha_weather must be non-negative, got {alpha_weather}"
            )));
        }
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in (0, 1], got {rho}"
            )));
        }
        Ok(FsoAtmosphere {
            cn2,
            lambda,
            alpha_weather,
            rho,
        })
    }

    pub fn gg_params(&self, d: f64) -> Result<GammaGammaParams> {
        fso_gg_params(rytov_variance(self.cn2, self.lambda, d))
    }
}

/// ρ·10^{-α(d_{i-1}+d_i)/10}
pub fn fso_gain(prev_d: f64, d: f64, atm: &FsoAtmosphere) -> f64 {
    atm.rho * 10f64.powf(-atm.alpha_weather * (prev_d + d) / 10.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HillSign {
    #[default]
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThzAtmosphere {
    /// K
    pub temperature: f64,
    /// Pa
    pub pressure: f64,
    /// percent
    pub humidity: f64,
    pub c_t: f64,
    pub a_t: f64,
    pub a_q: f64,
    pub hill_sign: HillSign,
    pub cn2_override: Option<f64>,
}

impl ThzAtmosphere {
    /// 296 K, 101325 Pa, 50 % humidity, C_n² pinned to the default.
    pub fn standard() -> Self {
        ThzAtmosphere {
            temperature: 296.0,
            pressure: 101_325.0,
            humidity: 50.0,
            c_t: 0.0,
            a_t: 0.0,
            a_q: 0.0,
            hill_sign: HillSign::Plus,
            cn2_override: Some(DEFAULT_THZ_CN2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("temperature", self.temperature)?;
        positive("pressure", self.pressure)?;
        if !(0.0..=100.0).contains(&self.humidity) {
            return Err(Error::InvalidParameter(format!(
                "humidity must lie in [0, 100] %, got {}",
                self.humidity
            )));
        }
        if let Some(c) = self.cn2_override {
            if !(c >= 0.0 && c.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "cn2_override must be non-negative, got {c}"
                )));
            }
        }
        Ok(())
    }
}

/// (C_T²/T)(A_T² + 10⁴A_Q² ± 200·A_T·A_Q), or the override when present.
pub fn hill_cn2(atm: &ThzAtmosphere) -> f64 {
    if let Some(c) = atm.cn2_override {
        return c;
    }
    let cross = 200.0 * atm.a_t * atm.a_q;
    let cross = match atm.hill_sign {
        HillSign::Plus => cross,
        HillSign::Minus => -cross,
    };
    atm.c_t * atm.c_t / atm.temperature * (atm.a_t * atm.a_t + 1e4 * atm.a_q * atm.a_q + cross)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Absorption {
    /// 1/m
    pub kappa: f64,
    /// set when f lies outside [`ABSORPTION_BAND`]
    pub out_of_band: bool,
}

const G_POLY: [f64; 4] = [-6.36, 9.06, -3.94, 5.54];

// saturated water vapour pressure (hPa), p in hPa
fn saturated_vapour_pressure(t: f64, p_hpa: f64) -> f64 {
    6.1121 * (1.0007 + 3.46e-6 * p_hpa) * (17.502 * (t - 273.15) / (t - 32.18)).exp()
}

fn mixing_ratio(atm: &ThzAtmosphere) -> f64 {
    let p_hpa = atm.pressure / 100.0;
    atm.humidity / 100.0 * saturated_vapour_pressure(atm.temperature, p_hpa) / p_hpa
}

fn polynomial_term(f: f64) -> f64 {
    let x = f / 1e12;
    G_POLY.iter().rev().fold(0.0, |acc, &p| acc * x + p)
}

fn resonant_terms(f: f64, mu: f64) -> f64 {
    let nu = f / (100.0 * SPEED_OF_LIGHT);
    let ga = 0.2205 * mu * (0.1303 * mu + 0.0294);
    let gb = (0.4093 * mu + 0.0925).powi(2);
    let gc = 2.014 * mu * (0.1702 * mu + 0.0303);
    let gd = (0.537 * mu + 0.0956).powi(2);
    ga / (gb + (nu - 10.835).powi(2)) + gc / (gd + (nu - 12.664).powi(2))
}

/// Scale applied to the polynomial background so the standard-condition
/// value at 300 GHz hits [`KAPPA_ANCHOR`].
pub fn polynomial_calibration() -> f64 {
    let mu = mixing_ratio(&ThzAtmosphere::standard());
    (KAPPA_ANCHOR - resonant_terms(KAPPA_ANCHOR_FREQUENCY, mu))
        / polynomial_term(KAPPA_ANCHOR_FREQUENCY)
}

/// Molecular absorption coefficient κ(f) in 1/m.
pub fn molecular_absorption(f: f64, atm: &ThzAtmosphere) -> Absorption {
    let mu = mixing_ratio(atm);
    let kappa = polynomial_calibration() * polynomial_term(f) + resonant_terms(f, mu);
    Absorption {
        kappa,
        out_of_band: !(ABSORPTION_BAND.0..=ABSORPTION_BAND.1).contains(&f),
    }
}

/// Deterministic terahertz link budget for an N-hop cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct ThzLinkBudget {
    pub f: f64,
    pub d_list: Vec<f64>,
    pub b_list: Vec<f64>,
    pub g_s: f64,
    pub g_d: f64,
    /// coefficients of the intermediate surfaces, length N-1
    pub r_list: Vec<f64>,
    pub kappa_t: f64,
    pub kappa_r: f64,
    /// molecular absorption coefficient in 1/m
    pub absorption: f64,
}

impl ThzLinkBudget {
    pub fn validate(&self) -> Result<()> {
        positive("f", self.f)?;
        let n = self.d_list.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "at least one hop is required".into(),
            ));
        }
        if self.b_list.len() != n {
            return Err(Error::InvalidParameter(format!(
                "b_list has {} entries for {n} hops",
                self.b_list.len()
            )));
        }
        if self.r_list.len() + 1 != n {
            return Err(Error::InvalidParameter(format!(
                "r_list has {} entries, expected {}",
                self.r_list.len(),
                n - 1
            )));
        }
        for &d in &self.d_list {
            positive("distance", d)?;
        }
        for &b in &self.b_list {
            positive("aperture radius", b)?;
        }
        positive("g_s", self.g_s)?;
        positive("g_d", self.g_d)?;
        for &r in &self.r_list {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "reflection coefficient {r} outside (0, 1]"
                )));
            }
        }
        for k in [self.kappa_t, self.kappa_r] {
            if !(k >= 0.0 && k.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "error vector magnitude {k} must be >= 0"
                )));
            }
        }
        if !(self.absorption >= 0.0 && self.absorption.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "absorption coefficient {} must be >= 0",
                self.absorption
            )));
        }
        Ok(())
    }

    pub fn hops(&self) -> usize {
        self.d_list.len()
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.f
    }

    /// Turbulence parameters of hop `i` (1-based).
    pub fn gg_params(&self, i: usize, cn2: f64) -> Result<GammaGammaParams> {
        self.check_index(i)?;
        let (d, b) = (self.d_list[i - 1], self.b_list[i - 1]);
        let lambda = self.wavelength();
        thz_gg_params(rytov_variance(cn2, lambda, d), b, lambda, d)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.hops() {
            Err(Error::InvalidParameter(format!(
                "hop index {i} outside 1..={}",
                self.hops()
            )))
        } else {
            Ok(())
        }
    }
}

/// g_f·τ for hop `i` (1-based).
pub fn thz_gain(budget: &ThzLinkBudget, i: usize) -> Result<f64> {
    budget.check_index(i)?;
    let n = budget.hops();
    let d = budget.d_list[i - 1];
    let spreading = SPEED_OF_LIGHT / (4.0 * PI * budget.f * d);
    let mut element = 1.0;
    if i == 1 {
        element *= budget.g_s.sqrt();
    }
    if i == n {
        element *= budget.g_d.sqrt();
    }
    if i > 1 && i < n {
        element *= budget.r_list[i - 2];
    }
    Ok(spreading * element * (-budget.absorption * d / 2.0).exp())
}

/// Receiver front end: low-noise amplifier, then mixer, then a passive
/// miscellaneous loss. All figures are linear power ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverChain {
    pub lna_gain: f64,
    pub lna_noise_factor: f64,
    pub mixer_loss: f64,
    pub mixer_noise_factor: f64,
    pub misc_loss: f64,
}

impl ReceiverChain {
    /// Cascade noise factor by Friis' formula. The passive loss after the
    /// mixer contributes noise factor equal to its loss.
    pub fn noise_factor(&self) -> f64 {
        let g1 = self.lna_gain;
        let g2 = 1.0 / self.mixer_loss;
        self.lna_noise_factor
            + (self.mixer_noise_factor - 1.0) / g1
            + (self.misc_loss - 1.0) / (g1 * g2)
    }

    /// Input-referred noise power k_B·T·B·F in watts.
    pub fn noise_power(&self, temperature: f64, bandwidth: f64) -> f64 {
        BOLTZMANN * temperature * bandwidth * self.noise_factor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db_to_linear;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn rytov_power_law() {
        let a = rytov_variance(1e-14, 1550e-9, 1000.0);
        let b = rytov_variance(1e-14, 1550e-9, 2000.0);
        assert!(rel(b / a, 2f64.powf(11.0 / 6.0)) < 1e-14);
        assert_eq!(rytov_variance(0.0, 1e-3, 100.0), 0.0);
        // 2.3e-9 at 300 GHz over 100 m
        let s = rytov_variance(2.3e-9, SPEED_OF_LIGHT / 300e9, 100.0);
        assert!(rel(s, 0.354_699_114_527_440_8) < 1e-13, "{s}");
    }

    #[test]
    fn weak_turbulence_limit() {
        let p = fso_gg_params(1e-6).unwrap();
        assert!(p.alpha > 1e5 && p.beta > 1e5);
        let q = thz_gg_params(1e-6, 0.3, 1e-3, 100.0).unwrap();
        assert!(q.alpha > 1e5 && q.beta > 1e5);
    }

    #[test]
    fn thz_plane_wave_limit() {
        for s in [0.01, 0.3, 1.0, 4.0] {
            let p = fso_gg_params(s).unwrap();
            let q = thz_gg_params(s, 1e-9, 1e-3, 100.0).unwrap();
            assert!(rel(q.alpha, p.alpha) < 1e-9);
            assert!(rel(q.beta, p.beta) < 1e-9);
        }
    }

    #[test]
    fn fig9_fixture() {
        let lambda = SPEED_OF_LIGHT / 300e9;
        let p = thz_gg_params(rytov_variance(2.3e-9, lambda, 100.0), 0.3, lambda, 100.0).unwrap();
        assert!(rel(p.alpha, 14.2446) < 1e-4, "{}", p.alpha);
        assert!(rel(p.beta, 15.7485) < 1e-4, "{}", p.beta);
    }

    #[test]
    fn alpha_root_solve() {
        let s = sigma_r2_for_alpha(10.02).unwrap();
        assert!(rel(fso_gg_params(s).unwrap().alpha, 10.02) < 1e-10);
        let s = sigma_r2_for_alpha(4.942).unwrap();
        assert!(rel(fso_gg_params(s).unwrap().alpha, 4.942) < 1e-10);
        assert!(sigma_r2_for_alpha(1.0).is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(TurbulencePreset::Weak.alpha_beta(), (10.02, 2.98));
        assert_eq!(TurbulencePreset::Moderate.alpha_beta(), (2.53, 3.02));
        assert_eq!(
            TurbulencePreset::from_name("strong"),
            Some(TurbulencePreset::Strong)
        );
        assert_eq!(TurbulencePreset::from_name("calm"), None);
    }

    #[test]
    fn geometry() {
        let g = FsoLinkGeometry::new(1000.0, 0.05, 0.1, 0.005, true).unwrap();
        let v = g.upsilon();
        assert!(rel(v, PI.sqrt() * 0.5 / 2f64.sqrt()) < 1e-15);
        assert!(g.a_o() > 0.0 && g.a_o() < 1.0);
        assert!(g.xi() > 0.0);
        let tighter = FsoLinkGeometry {
            sigma_s: 0.0005,
            ..g
        };
        assert!(rel(tighter.xi(), 100.0 * g.xi()) < 1e-12);
        assert!(FsoLinkGeometry::new(1.0, 0.0, 1.0, 1.0, true).is_err());
    }

    #[test]
    fn weather_gain() {
        let clear = FsoAtmosphere::new(1e-14, 1550e-9, 0.0, 1.0).unwrap();
        assert_eq!(fso_gain(100.0, 200.0, &clear), 1.0);
        let lossy = FsoAtmosphere { rho: 0.7, ..clear };
        assert_eq!(fso_gain(100.0, 200.0, &lossy), 0.7);
        // 0.43 dB/km over 2 km
        let rain = FsoAtmosphere::new(1e-14, 1550e-9, 0.43e-3, 1.0).unwrap();
        assert!(rel(fso_gain(1000.0, 1000.0, &rain), 10f64.powf(-0.086)) < 1e-14);
        assert!(FsoAtmosphere::new(1e-14, 1550e-9, 0.0, 1.2).is_err());
    }

    #[test]
    fn hill_structure() {
        let mut atm = ThzAtmosphere {
            cn2_override: None,
            c_t: 0.0,
            a_t: 1e-4,
            a_q: 1e-5,
            ..ThzAtmosphere::standard()
        };
        assert_eq!(hill_cn2(&atm), 0.0);
        atm.c_t = 0.2;
        atm.a_q = 0.0;
        assert!(rel(hill_cn2(&atm), 0.04 * 1e-8 / 296.0) < 1e-14);
        atm.a_q = 1e-5;
        let plus = hill_cn2(&atm);
        atm.hill_sign = HillSign::Minus;
        assert!(hill_cn2(&atm) < plus);
        assert_eq!(hill_cn2(&ThzAtmosphere::standard()), DEFAULT_THZ_CN2);
    }

    #[test]
    fn absorption_anchor() {
        let atm = ThzAtmosphere::standard();
        let k = molecular_absorption(300e9, &atm);
        assert!(rel(k.kappa, KAPPA_ANCHOR) < 1e-12);
        assert!(!k.out_of_band);
        assert!(molecular_absorption(600e9, &atm).out_of_band);
    }

    #[test]
    fn absorption_walls() {
        let atm = ThzAtmosphere::standard();
        let kappa = |f: f64| molecular_absorption(f, &atm).kappa;
        let mut maxima = Vec::new();
        let mut f = 100e9;
        while f < 500e9 {
            let (l, c, r) = (kappa(f - 0.1e9), kappa(f), kappa(f + 0.1e9));
            if c > l && c > r {
                maxima.push(f);
            }
            assert!(c >= 0.0);
            f += 0.1e9;
        }
        assert_eq!(maxima.len(), 2, "{maxima:?}");
        assert!((maxima[0] - 325e9).abs() < 5e9);
        assert!((maxima[1] - 380e9).abs() < 5e9);
    }

    #[test]
    fn dry_air_drops_resonances() {
        let dry = ThzAtmosphere {
            humidity: 0.0,
            ..ThzAtmosphere::standard()
        };
        assert_eq!(mixing_ratio(&dry), 0.0);
        assert_eq!(resonant_terms(325e9, 0.0), 0.0);
        let k = molecular_absorption(325e9, &dry).kappa;
        assert!(rel(k, polynomial_calibration() * polynomial_term(325e9)) < 1e-15);
    }

    #[test]
    fn warmer_air_absorbs_more() {
        let cold = ThzAtmosphere {
            temperature: 280.0,
            ..ThzAtmosphere::standard()
        };
        let warm = ThzAtmosphere {
            temperature: 310.0,
            ..ThzAtmosphere::standard()
        };
        assert!(
            molecular_absorption(380e9, &warm).kappa > molecular_absorption(380e9, &cold).kappa
        );
    }

    fn budget(d: Vec<f64>, absorption: f64) -> ThzLinkBudget {
        let n = d.len();
        ThzLinkBudget {
            f: 300e9,
            b_list: vec![0.3; n],
            d_list: d,
            g_s: 1.0,
            g_d: 1.0,
            r_list: vec![1.0; n - 1],
            kappa_t: 0.0,
            kappa_r: 0.0,
            absorption,
        }
    }

    #[test]
    fn spreading_gain() {
        let b = budget(vec![100.0, 200.0], 0.0);
        b.validate().unwrap();
        let g1 = thz_gain(&b, 1).unwrap();
        assert!(rel(g1, SPEED_OF_LIGHT / (4.0 * PI * 300e9 * 100.0)) < 1e-15);
        assert!(rel(thz_gain(&b, 2).unwrap(), g1 / 2.0) < 1e-15);
        assert!(thz_gain(&b, 0).is_err());
        assert!(thz_gain(&b, 3).is_err());
    }

    #[test]
    fn antenna_and_surface_factors() {
        let mut b = budget(vec![100.0, 100.0, 100.0], KAPPA_ANCHOR);
        b.g_s = db_to_linear(50.0);
        b.g_d = db_to_linear(50.0);
        b.r_list = vec![0.9, 0.8];
        let bare = SPEED_OF_LIGHT / (4.0 * PI * 300e9 * 100.0) * (-KAPPA_ANCHOR * 50.0).exp();
        assert!(rel(thz_gain(&b, 1).unwrap(), bare * db_to_linear(25.0)) < 1e-13);
        assert!(rel(thz_gain(&b, 2).unwrap(), bare * 0.9) < 1e-13);
        assert!(rel(thz_gain(&b, 3).unwrap(), bare * db_to_linear(25.0)) < 1e-13);
        let tau = (-KAPPA_ANCHOR * 50.0).exp();
        assert!(tau > 0.0 && tau <= 1.0);
    }

    #[test]
    fn budget_validation() {
        let mut b = budget(vec![100.0, 100.0], 0.0);
        b.r_list = vec![];
        assert!(b.validate().is_err());
        let mut b = budget(vec![100.0, 100.0], 0.0);
        b.r_list = vec![1.5];
        assert!(b.validate().is_err());
    }

    #[test]
    fn receiver_noise() {
        let chain = ReceiverChain {
            lna_gain: db_to_linear(35.0),
            lna_noise_factor: db_to_linear(1.0),
            mixer_loss: db_to_linear(5.0),
            mixer_noise_factor: db_to_linear(6.0),
            misc_loss: db_to_linear(3.0),
        };
        let f = chain.noise_factor();
        let expected = db_to_linear(1.0)
            + (db_to_linear(6.0) - 1.0) / db_to_linear(35.0)
            + (db_to_linear(3.0) - 1.0) / db_to_linear(30.0);
        assert!(rel(f, expected) < 1e-14);
        let n = chain.noise_power(296.0, 50e9);
        assert!(rel(n, BOLTZMANN * 296.0 * 50e9 * expected) < 1e-14);
    }
}
