//! Gamma-Gamma and pointing-error marginals and the laws of their products.
//!
//! With N turbulence factors and L ≤ N misalignment factors the composite
//! channel is Z = Z₁·Z₂, Z₁ the product of the Gamma-Gamma factors and Z₂ the
//! product of the pointing-error factors. Densities and distribution functions
//! of Z₁ and Z are Meijer-G functions of
//! w = x · Π(α_iβ_i/Ω_i) / ΠA_{o,j}
//! with lower parameters 𝓑 = (α₁…α_N, β₁…β_N, ξ₁…ξ_L) and upper parameters
//! (ξ_j + 1), plus the extra pair (1; 0) for the distribution function.

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::specfun::{
    bessel_k_scaled, ln_gamma, meijer_g_with, Accuracy, MeijerGSpec, MeijerValue, SpecFunError,
    Strategy, DEGENERACY_TOL,
};
use crate::{Error, Result};

/// Shaping parameters and mean of one turbulence factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaGammaParams {
    pub alpha: f64,
    pub beta: f64,
    pub omega: f64,
}

impl GammaGammaParams {
    pub fn new(alpha: f64, beta: f64, omega: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("omega", omega)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        Ok(GammaGammaParams { alpha, beta, omega })
    }

    /// Unit-mean factor.
    pub fn unit(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0)
    }
}

/// (ξ, A_o) of one misaligned factor; its density is ξ x^{ξ-1} / A_o^ξ on [0, A_o].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingErrorParams {
    pub xi: f64,
    pub a_o: f64,
}

impl PointingErrorParams {
    pub fn new(xi: f64, a_o: f64) -> Result<Self> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "xi = {xi} must be positive"
            )));
        }
        if !(a_o > 0.0 && a_o <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "A_o = {a_o} must lie in (0, 1]"
            )));
        }
        Ok(PointingErrorParams { xi, a_o })
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 || x > self.a_o {
            return 0.0;
        }
        self.xi / self.a_o * (x / self.a_o).powf(self.xi - 1.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= self.a_o {
            1.0
        } else {
            (x / self.a_o).powf(self.xi)
        }
    }
}

/// Z = Π (Gamma-Gamma factors) · Π (pointing-error factors).
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeProduct {
    gg_links: Vec<GammaGammaParams>,
    pe_links: Vec<PointingErrorParams>,
}

/// A density or distribution value with the provenance of its Meijer-G.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistValue {
    pub value: f64,
    pub accuracy: Accuracy,
}

impl From<MeijerValue> for DistValue {
    fn from(v: MeijerValue) -> Self {
        DistValue {
            value: v.value,
            accuracy: v.accuracy,
        }
    }
}

impl CompositeProduct {
    pub fn new(
        gg_links: Vec<GammaGammaParams>,
        pe_links: Vec<PointingErrorParams>,
    ) -> Result<Self> {
        if gg_links.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one turbulence factor is required".to_string(),
            ));
        }
        if pe_links.len() > gg_links.len() {
            return Err(Error::InvalidParameter(format!(
                "{} misaligned factors exceed {} turbulence factors",
                pe_links.len(),
                gg_links.len()
            )));
        }
        Ok(CompositeProduct { gg_links, pe_links })
    }

    pub fn turbulence_only(gg_links: Vec<GammaGammaParams>) -> Result<Self> {
        Self::new(gg_links, Vec::new())
    }

    pub fn gg_links(&self) -> &[GammaGammaParams] {
        &self.gg_links
    }

    pub fn pe_links(&self) -> &[PointingErrorParams] {
        &self.pe_links
    }

    /// N
    pub fn n(&self) -> usize {
        self.gg_links.len()
    }

    /// L
    pub fn l(&self) -> usize {
        self.pe_links.len()
    }

    /// 𝓑 = (α₁…α_N, β₁…β_N, ξ₁…ξ_L)
    pub fn b_tuple(&self) -> Vec<f64> {
        self.gg_links
            .iter()
            .map(|g| g.alpha)
            .chain(self.gg_links.iter().map(|g| g.beta))
            .chain(self.pe_links.iter().map(|p| p.xi))
            .collect()
    }

    /// 𝓐 = (1, ξ₁+1 … ξ_L+1)
    pub fn a_tuple(&self) -> Vec<f64> {
        std::iter::once(1.0)
            .chain(self.pe_links.iter().map(|p| p.xi + 1.0))
            .collect()
    }

    /// ln of the factor w/x.
    pub fn ln_argument_scale(&self) -> f64 {
        let gg: f64 = self
            .gg_links
            .iter()
            .map(|g| (g.alpha * g.beta / g.omega).ln())
            .sum();
        let pe: f64 = self.pe_links.iter().map(|p| p.a_o.ln()).sum();
        gg - pe
    }

    /// ln(Πξ / Π Γ(α)Γ(β)), the Meijer-G prefactor.
    pub fn ln_prefactor(&self) -> f64 {
        let gg: f64 = self
            .gg_links
            .iter()
            .map(|g| ln_gamma(g.alpha) + ln_gamma(g.beta))
            .sum();
        let pe: f64 = self.pe_links.iter().map(|p| p.xi.ln()).sum();
        pe - gg
    }

    pub fn pdf_spec(&self) -> MeijerGSpec {
        let b = self.b_tuple();
        MeijerGSpec {
            m: b.len(),
            n: 0,
            a: self.pe_links.iter().map(|p| p.xi + 1.0).collect(),
            b,
        }
    }

    pub fn cdf_spec(&self) -> MeijerGSpec {
        let mut b = self.b_tuple();
        let m = b.len();
        b.push(0.0);
        MeijerGSpec {
            m,
            n: 1,
            a: self.a_tuple(),
            b,
        }
    }

    /// True when two elements of 𝓑 differ by an integer (including zero).
    pub fn is_degenerate(&self) -> bool {
        degenerate_pair(&self.b_tuple()).is_some()
    }

    /// Largest value of Z₂; Z₂ is supported on [0, ΠA_o].
    pub fn pointing_support(&self) -> f64 {
        self.pe_links.iter().map(|p| p.a_o).product()
    }
}

fn degenerate_pair(b: &[f64]) -> Option<(usize, usize)> {
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            let d = b[i] - b[j];
            if (d - d.round()).abs() < DEGENERACY_TOL {
                return Some((i, j));
            }
        }
    }
    None
}

/// Gamma-Gamma density
/// 2(αβ/Ω)^{(α+β)/2} x^{(α+β)/2-1} K_{α-β}(2√(αβx/Ω)) / (Γ(α)Γ(β)).
pub fn gg_pdf(p: &GammaGammaParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "gamma-gamma density",
            value: x,
        });
    }
    let (a, b) = (p.alpha, p.beta);
    let ab = a * b / p.omega;
    let y = 2.0 * (ab * x).sqrt();
    match bessel_k_scaled(a - b, y) {
        Ok(k) => {
            let half = 0.5 * (a + b);
            let ln = std::f64::consts::LN_2 + half * ab.ln() + (half - 1.0) * x.ln()
                - ln_gamma(a)
                - ln_gamma(b)
                + k.ln()
                - y;
            Ok(ln.exp())
        }
        // K overflows only for tiny arguments; the Meijer form scales in log space
        Err(SpecFunError::Overflow { .. }) => Ok(z1_pdf(std::slice::from_ref(p), x)?.value),
        Err(e) => Err(e.into()),
    }
}

/// Density of a product of independent Gamma-Gamma factors.
pub fn z1_pdf(links: &[GammaGammaParams], x: f64) -> Result<DistValue> {
    z_pdf_with(
        &CompositeProduct::turbulence_only(links.to_vec())?,
        x,
        Strategy::Auto,
    )
}

/// Distribution function of a product of independent Gamma-Gamma factors.
pub fn z1_cdf(links: &[GammaGammaParams], x: f64) -> Result<DistValue> {
    z_cdf_with(
        &CompositeProduct::turbulence_only(links.to_vec())?,
        x,
        Strategy::Auto,
    )
}

/// Density of a product of independent pointing-error factors.
///
/// With t = ln(ΠA_o / x), ln(ΠA_o/Z₂) is a sum of exponential variables with
/// rates ξ_j, so the density is f_T(t)/x. Equal rates give the Erlang form,
/// evaluated in log space; otherwise the partial-fraction expansion over the
/// distinct rates is used.
pub fn z2_pdf(links: &[PointingErrorParams], x: f64) -> Result<f64> {
    if links.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one pointing-error factor is required".to_string(),
        ));
    }
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "pointing-error product density",
            value: x,
        });
    }
    let support: f64 = links.iter().map(|p| p.a_o).product();
    if x > support {
        return Ok(0.0);
    }
    let t = (support / x).ln().max(0.0);
    let rates: Vec<f64> = links.iter().map(|p| p.xi).collect();
    Ok(sum_of_exponentials_pdf(&rates, t) / x)
}

/// Density at t of a sum of independent exponential variables.
fn sum_of_exponentials_pdf(rates: &[f64], t: f64) -> f64 {
    let groups = group_rates(rates);
    if groups.len() == 1 {
        let (lambda, m) = groups[0];
        if m == 1 {
            return lambda * (-lambda * t).exp();
        }
        if t == 0.0 {
            return 0.0;
        }
        let mf = m as f64;
        let ln = mf * lambda.ln() - ln_gamma(mf) + (mf - 1.0) * t.ln() - lambda * t;
        return ln.exp();
    }
    let ln_c: f64 = rates.iter().map(|r| r.ln()).sum();
    let mut total = 0.0;
    for (g, &(lambda, m)) in groups.iter().enumerate() {
        // derivatives of h(s) = Π_{g'≠g} (λ_{g'} + s)^{-m_{g'}} at s = -λ
        let others: Vec<(f64, f64)> = groups
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != g)
            .map(|(_, &(l2, m2))| (l2 - lambda, m2 as f64))
            .collect();
        let mut dlog = vec![0.0; m];
        let mut fact = 1.0;
        for (r, slot) in dlog.iter_mut().enumerate().skip(1) {
            if r > 1 {
                fact *= (r - 1) as f64;
            }
            let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
            *slot = others
                .iter()
                .map(|&(u, mm)| -mm * sign * fact / u.powi(r as i32))
                .sum();
        }
        let mut h = vec![0.0; m];
        h[0] = others.iter().map(|&(u, mm)| u.powf(-mm)).product();
        for nn in 1..m {
            let mut acc = 0.0;
            let mut binom = 1.0;
            for r in 0..nn {
                acc += binom * h[r] * dlog[nn - r];
                binom *= (nn - 1 - r) as f64 / (r + 1) as f64;
            }
            h[nn] = acc;
        }
        // c_k = C · h^{(m-k)} / (m-k)!, term c_k t^{k-1} e^{-λt} / (k-1)!
        let decay = (ln_c - lambda * t).exp();
        let mut inner = 0.0;
        for k in 1..=m {
            let d = m - k;
            let coef = h[d] / factorial(d);
            inner += coef * t.powi(k as i32 - 1) / factorial(k - 1);
        }
        total += decay * inner;
    }
    total.max(0.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Distinct rates with multiplicities; rates within 1e-9 relative are merged.
fn group_rates(rates: &[f64]) -> Vec<(f64, usize)> {
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for &r in rates {
        match groups
            .iter_mut()
            .find(|(l, _)| (l - r).abs() <= 1e-9 * l.abs().max(r.abs()))
        {
            Some(g) => g.1 += 1,
            None => groups.push((r, 1)),
        }
    }
    groups
}

/// Density of the composite channel Z.
pub fn z_pdf(ch: &CompositeProduct, x: f64) -> Result<DistValue> {
    z_pdf_with(ch, x, Strategy::Auto)
}

pub fn z_pdf_with(ch: &CompositeProduct, x: f64, strategy: Strategy) -> Result<DistValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "composite density",
            value: x,
        });
    }
    let lw = x.ln() + ch.ln_argument_scale();
    let v = meijer_g_with(
        &ch.pdf_spec(),
        lw.exp(),
        ch.ln_prefactor() - x.ln(),
        strategy,
    )?;
    Ok(v.into())
}

/// Distribution function of the composite channel Z; zero for x ≤ 0.
pub fn z_cdf(ch: &CompositeProduct, x: f64) -> Result<DistValue> {
    z_cdf_with(ch, x, Strategy::Auto)
}

pub fn z_cdf_with(ch: &CompositeProduct, x: f64, strategy: Strategy) -> Result<DistValue> {
    if x.is_nan() {
        return Err(Error::Domain {
            what: "composite distribution",
            value: x,
        });
    }
    if x <= 0.0 {
        return Ok(DistValue {
            value: 0.0,
            accuracy: Accuracy::Clean,
        });
    }
    if x == f64::INFINITY {
        return Ok(DistValue {
            value: 1.0,
            accuracy: Accuracy::Clean,
        });
    }
    let lw = x.ln() + ch.ln_argument_scale();
    let v = meijer_g_with(&ch.cdf_spec(), lw.exp(), ch.ln_prefactor(), strategy)?;
    Ok(v.into())
}

/// Small-x form of the distribution function: the leading power of each
/// residue series,
/// K Σ_i Π_{j≠i} Γ(𝓑_j − 𝓑_i) / (𝓑_i Π_l Γ(ξ_l + 1 − 𝓑_i)) · w^{𝓑_i}.
pub fn z_cdf_asymptotic(ch: &CompositeProduct, x: f64) -> Result<f64> {
    let terms = asymptotic_terms(ch)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let lw = x.ln() + ch.ln_argument_scale();
    Ok(terms
        .iter()
        .map(|&(exponent, ln_c, sign)| sign * (ln_c + exponent * lw).exp())
        .sum())
}

/// (𝓑_i, ln|c_i|, sign c_i) for the asymptotic sum, prefactor included.
pub(crate) fn asymptotic_terms(ch: &CompositeProduct) -> Result<Vec<(f64, f64, f64)>> {
    let b = ch.b_tuple();
    if let Some((i, j)) = degenerate_pair(&b) {
        return Err(Error::Degenerate(format!(
            "{} and {} differ by an integer; use the exact distribution function",
            b[i], b[j]
        )));
    }
    let xis: Vec<f64> = ch.pe_links.iter().map(|p| p.xi).collect();
    let lk = ch.ln_prefactor();
    let mut out = Vec::with_capacity(b.len());
    for (i, &bi) in b.iter().enumerate() {
        let mut ln_c = lk - bi.ln();
        let mut sign = 1.0;
        let mut vanishes = false;
        for (j, &bj) in b.iter().enumerate() {
            if j != i {
                let (lg, s) = crate::specfun::ln_gamma_signed(bj - bi)?;
                ln_c += lg;
                sign *= s;
            }
        }
        for &xi in &xis {
            let arg = xi + 1.0 - bi;
            if crate::specfun::recip_gamma(arg) == 0.0 {
                vanishes = true;
                break;
            }
            let (lg, s) = crate::specfun::ln_gamma_signed(arg)?;
            ln_c -= lg;
            sign *= s;
        }
        if !vanishes {
            out.push((bi, ln_c, sign));
        }
    }
    Ok(out)
}

/// Draws Z by multiplying independent factor draws: each Gamma-Gamma factor
/// is Gamma(α, 1/α)·Gamma(β, Ω/β) and each pointing-error factor A_o·U^{1/ξ}.
#[derive(Debug, Clone)]
pub struct ZSampler {
    gg: Vec<(Gamma<f64>, Gamma<f64>)>,
    pe: Vec<(f64, f64)>,
}

impl ZSampler {
    pub fn new(ch: &CompositeProduct) -> Self {
        let gg = ch
            .gg_links
            .iter()
            .map(|g| {
                (
                    Gamma::new(g.alpha, 1.0 / g.alpha).expect("validated shape"),
                    Gamma::new(g.beta, g.omega / g.beta).expect("validated shape"),
                )
            })
            .collect();
        let pe = ch.pe_links.iter().map(|p| (p.a_o, 1.0 / p.xi)).collect();
        ZSampler { gg, pe }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut z = 1.0;
        for (x, y) in &self.gg {
            z *= x.sample(rng) * y.sample(rng);
        }
        for &(a_o, inv_xi) in &self.pe {
            let u: f64 = rng.random();
            z *= a_o * u.powf(inv_xi);
        }
        z
    }
}

/// `count` independent draws of Z from `rng`.
pub fn sample_z<R: Rng + ?Sized>(ch: &CompositeProduct, rng: &mut R, count: usize) -> Vec<f64> {
    let sampler = ZSampler::new(ch);
    (0..count).map(|_| sampler.sample(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_k;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gg(a: f64, b: f64) -> GammaGammaParams {
        GammaGammaParams::unit(a, b).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn parameter_validation() {
        assert!(GammaGammaParams::new(0.0, 1.0, 1.0).is_err());
        assert!(GammaGammaParams::new(1.0, 1.0, -1.0).is_err());
        assert!(PointingErrorParams::new(1.0, 1.5).is_err());
        assert!(PointingErrorParams::new(-1.0, 0.5).is_err());
        assert!(CompositeProduct::new(vec![], vec![]).is_err());
        let pe = PointingErrorParams::new(2.0, 0.5).unwrap();
        assert!(CompositeProduct::new(vec![gg(2.0, 1.5)], vec![pe, pe]).is_err());
    }

    #[test]
    fn tuples() {
        let pe = PointingErrorParams::new(6.7, 0.8).unwrap();
        let ch = CompositeProduct::new(vec![gg(10.02, 2.98), gg(4.94, 1.23)], vec![pe]).unwrap();
        assert_eq!(ch.b_tuple(), vec![10.02, 4.94, 2.98, 1.23, 6.7]);
        assert_eq!(ch.a_tuple(), vec![1.0, 7.7]);
        assert!(!ch.is_degenerate());
        let twin = CompositeProduct::turbulence_only(vec![gg(10.02, 2.98); 2]).unwrap();
        assert!(twin.is_degenerate());
    }

    #[test]
    fn double_rayleigh_special_case() {
        // α = β = 1: 2 K_0(2√x)
        let v = gg_pdf(&gg(1.0, 1.0), 1.0).unwrap();
        assert!(rel(v, 2.0 * bessel_k(0.0, 2.0).unwrap()) < 1e-14);
        assert!(rel(v, 0.227_787_745_499_066_87) < 1e-13);
    }

    #[test]
    fn single_factor_reduction() {
        let p = gg(10.02, 2.98);
        for &x in &[0.1, 1.0, 5.0] {
            let a = gg_pdf(&p, x).unwrap();
            let b = z1_pdf(&[p], x).unwrap().value;
            assert!(rel(a, b) < 1e-9, "x = {x}: {a} vs {b}");
        }
    }

    #[test]
    fn gg_pdf_tiny_argument_falls_back() {
        let p = gg(60.0, 1.2);
        let v = gg_pdf(&p, 1e-12).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn l_zero_paths_agree_exactly() {
        let links = vec![gg(10.02, 2.98), gg(4.94, 1.23)];
        let ch = CompositeProduct::turbulence_only(links.clone()).unwrap();
        for &x in &[0.05, 0.3, 1.0, 3.0] {
            assert_eq!(z_cdf(&ch, x).unwrap(), z1_cdf(&links, x).unwrap());
            assert_eq!(z_pdf(&ch, x).unwrap(), z1_pdf(&links, x).unwrap());
        }
    }

    #[test]
    fn cdf_limits() {
        let pe = PointingErrorParams::new(6.7, 0.8).unwrap();
        let ch = CompositeProduct::new(vec![gg(10.02, 2.98)], vec![pe]).unwrap();
        assert_eq!(z_cdf(&ch, 0.0).unwrap().value, 0.0);
        assert_eq!(z_cdf(&ch, -1.0).unwrap().value, 0.0);
        assert!(z_cdf(&ch, 1e-6).unwrap().value < 1e-12);
        assert!((z_cdf(&ch, 1e3).unwrap().value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn z2_single_factor() {
        let p = PointingErrorParams::new(6.7, 0.8).unwrap();
        for &x in &[0.01, 0.3, 0.79, 0.8] {
            assert!(rel(z2_pdf(&[p], x).unwrap(), p.pdf(x)) < 1e-13);
        }
        assert_eq!(z2_pdf(&[p], 0.81).unwrap(), 0.0);
        assert!(z2_pdf(&[p], 0.0).is_err());
    }

    #[test]
    fn z2_log_law() {
        // ξ = 1, A_o = 1, two factors: ln(1/x)
        let p = PointingErrorParams::new(1.0, 1.0).unwrap();
        for &x in &[0.01, 0.5, 0.99] {
            assert!(rel(z2_pdf(&[p, p], x).unwrap(), -x.ln()) < 1e-13);
        }
    }

    #[test]
    fn z2_distinct_rates() {
        // two rates: f_T(t) = λ1λ2 (e^{-λ1 t} - e^{-λ2 t}) / (λ2 - λ1)
        let p1 = PointingErrorParams::new(2.0, 0.9).unwrap();
        let p2 = PointingErrorParams::new(5.0, 0.7).unwrap();
        let x: f64 = 0.2;
        let t = (0.63 / x).ln();
        let expected = 10.0 * ((-2.0 * t).exp() - (-5.0 * t).exp()) / 3.0 / x;
        assert!(rel(z2_pdf(&[p1, p2], x).unwrap(), expected) < 1e-13);
    }

    #[test]
    fn z2_repeated_rate_group() {
        // rates (2, 2, 5): convolve Erlang(2, 2) with Exp(5) in closed form
        // f(t) = 20 [e^{-2t}(3t - 1) + e^{-5t}] / 9
        let a = PointingErrorParams::new(2.0, 1.0).unwrap();
        let b = PointingErrorParams::new(5.0, 1.0).unwrap();
        for &t in &[0.1f64, 0.7, 2.0] {
            let x = (-t).exp();
            let expected = 20.0 * ((-2.0 * t).exp() * (3.0 * t - 1.0) + (-5.0 * t).exp()) / 9.0;
            let got = z2_pdf(&[a, b, a], x).unwrap() * x;
            assert!(rel(got, expected) < 1e-12, "t = {t}: {got} vs {expected}");
        }
    }

    #[test]
    fn z2_large_l_stays_finite() {
        let p = PointingErrorParams::new(40.0, 0.9).unwrap();
        let v = z2_pdf(&[p; 12], 1e-3).unwrap();
        assert!(v.is_finite() && v >= 0.0);
    }

    #[test]
    fn asymptote_ratio_single_link() {
        let links = vec![gg(10.02, 2.98)];
        let ch = CompositeProduct::turbulence_only(links.clone()).unwrap();
        let x = 1e-3;
        let r = z_cdf_asymptotic(&ch, x).unwrap() / z1_cdf(&links, x).unwrap().value;
        assert!((r - 1.0).abs() < 0.01, "{r}");
    }

    #[test]
    fn asymptote_rejects_degenerate_tuple() {
        let ch = CompositeProduct::turbulence_only(vec![gg(10.02, 2.98); 2]).unwrap();
        assert!(matches!(
            z_cdf_asymptotic(&ch, 1e-3),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn sampler_is_deterministic() {
        let ch = CompositeProduct::turbulence_only(vec![gg(4.94, 1.23)]).unwrap();
        let a = sample_z(&ch, &mut ChaCha8Rng::seed_from_u64(7), 100);
        let b = sample_z(&ch, &mut ChaCha8Rng::seed_from_u64(7), 100);
        assert_eq!(a, b);
        assert!(a.iter().all(|&z| z > 0.0));
    }

    #[test]
    fn huge_xi_concentrates_at_a_o() {
        let pe = PointingErrorParams::new(1e6, 0.6).unwrap();
        let p = gg(10.02, 2.98);
        let with = CompositeProduct::new(vec![p], vec![pe]).unwrap();
        let without = CompositeProduct::turbulence_only(vec![p]).unwrap();
        let a = sample_z(&with, &mut ChaCha8Rng::seed_from_u64(3), 1000);
        let b = sample_z(&without, &mut ChaCha8Rng::seed_from_u64(3), 1000);
        // same stream; the uniform draw follows the Gamma draws, so compare the law
        let mean_a = a.iter().sum::<f64>() / a.len() as f64;
        let mean_b = b.iter().sum::<f64>() / b.len() as f64;
        assert!((mean_a / mean_b - 0.6).abs() < 0.05);
        assert!(a.iter().all(|&z| z > 0.0));
    }
}
