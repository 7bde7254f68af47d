//! Meijer G-function for real parameters and positive argument.
//!
//! Only two structural families are accepted, which between them contain every
//! product-distribution density and CDF in this crate:
//!
//! * `n = 0, m = q, p < q` (densities),
//! * `n = 1, m = q - 1, p < q` (distribution functions).
//!
//! The primary evaluation is the Slater residue expansion into pFq series.
//! Integer-separated lower parameters make that expansion singular; they are
//! handled by symmetric parameter perturbation with Richardson extrapolation.
//! A Mellin–Barnes contour integral is available as an independent route and
//! is used by [`Strategy::Auto`] when the series suffers cancellation.

use super::contour;
use super::gamma::ln_gamma_signed;
use super::hyper::{pfq, PFQ_DEFAULT_TOL};
use super::SpecFunError;

/// Two lower parameters closer than this to an integer difference are treated
/// as coincident.
pub const DEGENERACY_TOL: f64 = 1e-6;
/// Perturbation size relative to `1 + |b|`.
pub const PERTURBATION_SCALE: f64 = 1e-5;

// relative error budgets used by Strategy::Auto
const AUTO_CLEAN_TOL: f64 = 1e-9;
const AUTO_PERTURBED_TOL: f64 = 1e-8;
// beyond this the perturbed result is reported as an error
const PERTURBED_MAX_REL_ERR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    pub m: usize,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeijerClass {
    /// `G^{q,0}_{p,q}`
    Density,
    /// `G^{q-1,1}_{p,q}`
    Distribution,
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self, SpecFunError> {
        let spec = MeijerGSpec { m, n, a, b };
        spec.class()?;
        Ok(spec)
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn class(&self) -> Result<MeijerClass, SpecFunError> {
        let (m, n, p, q) = (self.m, self.n, self.p(), self.q());
        if m > q || n > p {
            return Err(SpecFunError::UnsupportedSpec(format!(
                "G^{{{m},{n}}}_{{{p},{q}}} violates m <= q, n <= p"
            )));
        }
        if self.a.iter().chain(&self.b).any(|v| !v.is_finite()) {
            return Err(SpecFunError::UnsupportedSpec(
                "non-finite parameter".to_string(),
            ));
        }
        if p < q && n == 0 && m == q {
            return Ok(MeijerClass::Density);
        }
        if p < q && n == 1 && m + 1 == q {
            return Ok(MeijerClass::Distribution);
        }
        Err(SpecFunError::UnsupportedSpec(format!(
            "G^{{{m},{n}}}_{{{p},{q}}} is outside the supported classes"
        )))
    }

    /// (-1)^{p-m-n}, the sign of the pFq argument in the residue expansion.
    pub fn argument_sign(&self) -> f64 {
        if (self.p() + self.m + self.n).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// One residue series: `coefficient · x^exponent · pFq(upper; lower; sign·x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlaterTerm {
    pub exponent: f64,
    /// ln|coefficient|; `-inf` for a vanishing coefficient.
    pub ln_abs_coefficient: f64,
    pub coefficient_sign: f64,
    /// Σ |ln Γ(·)| over the factors, used for the rounding estimate.
    pub ln_magnitude: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl SlaterTerm {
    pub fn coefficient(&self) -> f64 {
        self.coefficient_sign * self.ln_abs_coefficient.exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlaterExpansion {
    pub terms: Vec<SlaterTerm>,
    pub argument_sign: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Estimated relative error (rounding, cancellation and truncation).
    pub rel_error: f64,
}

impl SlaterExpansion {
    /// `e^{ln_scale} · Σ_h c_h x^{b_h} pFq(…; sign·x)`.
    pub fn evaluate(&self, x: f64, ln_scale: f64) -> Result<SeriesValue, SpecFunError> {
        if !(x > 0.0) {
            return Err(SpecFunError::Domain {
                function: "meijer_g",
                arg: x,
            });
        }
        let lx = x.ln();
        let z = self.argument_sign * x;
        let mut value = 0.0;
        let mut err = 0.0;
        for t in &self.terms {
            if t.coefficient_sign == 0.0 {
                continue;
            }
            let series = pfq(&t.upper, &t.lower, z, PFQ_DEFAULT_TOL * 1e-2)?;
            let magnitude = (t.ln_abs_coefficient + t.exponent * lx + ln_scale).exp();
            if !magnitude.is_finite() {
                return Err(SpecFunError::Overflow {
                    function: "meijer_g",
                    nu: t.exponent,
                    x,
                });
            }
            let contribution = t.coefficient_sign * magnitude * series.value;
            value += contribution;
            let coef_err = 2.0 * f64::EPSILON * (1.0 + t.ln_magnitude + (t.exponent * lx).abs());
            err += magnitude * (series.abs_sum * coef_err + series.abs_error)
                + contribution.abs() * series.rel_error;
        }
        let rel_error = if value == 0.0 {
            f64::INFINITY
        } else {
            err / value.abs() + 4.0 * f64::EPSILON
        };
        Ok(SeriesValue { value, rel_error })
    }
}

fn near_integer(d: f64) -> bool {
    (d - d.round()).abs() < DEGENERACY_TOL
}

/// Residue expansion over the poles of Γ(b_h - s), h ≤ m.
pub fn build_slater_expansion(spec: &MeijerGSpec) -> Result<SlaterExpansion, SpecFunError> {
    spec.class()?;
    let (m, n) = (spec.m, spec.n);
    let (a, b) = (&spec.a, &spec.b);
    for h in 0..m {
        for j in (h + 1)..m {
            if near_integer(b[h] - b[j]) {
                return Err(SpecFunError::DegenerateParameters {
                    first: h,
                    second: j,
                    difference: b[h] - b[j],
                });
            }
        }
    }
    let mut terms = Vec::with_capacity(m);
    for h in 0..m {
        let bh = b[h];
        let mut ln_c = 0.0;
        let mut sign = 1.0;
        let mut ln_mag = 0.0;
        let mut vanishes = false;
        let mut mul = |arg: f64, numerator: bool| -> Result<(), SpecFunError> {
            if numerator {
                let (lg, s) = ln_gamma_signed(arg).map_err(|_| {
                    SpecFunError::UnsupportedSpec(format!(
                        "pole of order two at b = {bh} is outside the supported classes"
                    ))
                })?;
                ln_c += lg;
                sign *= s;
                ln_mag += lg.abs();
            } else if arg <= 0.0 && arg == arg.round() {
                // 1/Γ at a pole; underflow for large arguments is not a zero
                vanishes = true;
            } else {
                let (lg, s) = ln_gamma_signed(arg)?;
                ln_c -= lg;
                sign *= s;
                ln_mag += lg.abs();
            }
            Ok(())
        };
        for (j, &bj) in b.iter().enumerate() {
            if j < m && j != h {
                mul(bj - bh, true)?;
            } else if j >= m {
                mul(1.0 + bh - bj, false)?;
            }
        }
        for (j, &aj) in a.iter().enumerate() {
            if j < n {
                mul(1.0 + bh - aj, true)?;
            } else {
                mul(aj - bh, false)?;
            }
        }
        let upper: Vec<f64> = a.iter().map(|&aj| 1.0 + bh - aj).collect();
        let lower: Vec<f64> = b
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != h)
            .map(|(_, &bj)| 1.0 + bh - bj)
            .collect();
        if let Some(pos) = lower.iter().position(|&l| l <= 0.0 && near_integer(l)) {
            if !vanishes {
                return Err(SpecFunError::UnsupportedSpec(format!(
                    "lower series parameter {} is a non-positive integer",
                    lower[pos]
                )));
            }
        }
        terms.push(SlaterTerm {
            exponent: bh,
            ln_abs_coefficient: if vanishes { f64::NEG_INFINITY } else { ln_c },
            coefficient_sign: if vanishes { 0.0 } else { sign },
            ln_magnitude: ln_mag,
            upper,
            lower,
        });
    }
    Ok(SlaterExpansion {
        terms,
        argument_sign: spec.argument_sign(),
    })
}

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeijerMethod {
    Slater,
    Perturbed,
    Contour,
}

/// Whether the value came from an exact representation or from the
/// perturbation fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Accuracy {
    #[default]
    Clean,
    Perturbed,
}

impl Accuracy {
    pub fn combine(self, other: Accuracy) -> Accuracy {
        if self == Accuracy::Perturbed || other == Accuracy::Perturbed {
            Accuracy::Perturbed
        } else {
            Accuracy::Clean
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Accuracy::Clean => "clean",
            Accuracy::Perturbed => "perturbed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Residue expansion only; degenerate parameters are an error.
    Slater,
    /// Perturbation fallback, also applied to non-degenerate parameters.
    Perturbed,
    /// Mellin–Barnes integral along a vertical line.
    Contour,
    /// Slater (perturbed when degenerate), switching to the contour integral
    /// when the series estimate is poorly conditioned.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerValue {
    pub value: f64,
    pub accuracy: Accuracy,
    pub method: MeijerMethod,
    pub rel_error: f64,
}

/// G(x) with the default strategy.
pub fn meijer_g(spec: &MeijerGSpec, x: f64) -> Result<MeijerValue, SpecFunError> {
    meijer_g_with(spec, x, 0.0, Strategy::Auto)
}

/// `e^{ln_scale} · G(x)`; the scale is applied in log space so that prefactors
/// far outside the double range can be folded in.
pub fn meijer_g_with(
    spec: &MeijerGSpec,
    x: f64,
    ln_scale: f64,
    strategy: Strategy,
) -> Result<MeijerValue, SpecFunError> {
    spec.class()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain {
            function: "meijer_g",
            arg: x,
        });
    }
    match strategy {
        Strategy::Slater => {
            let v = build_slater_expansion(spec)?.evaluate(x, ln_scale)?;
            Ok(MeijerValue {
                value: v.value,
                accuracy: Accuracy::Clean,
                method: MeijerMethod::Slater,
                rel_error: v.rel_error,
            })
        }
        Strategy::Perturbed => {
            let v = perturbed(spec, x, ln_scale)?;
            if v.rel_error > PERTURBED_MAX_REL_ERR {
                return Err(SpecFunError::Accuracy {
                    plus: v.plus,
                    minus: v.minus,
                });
            }
            Ok(v.into_value())
        }
        Strategy::Contour => contour::meijer_g_contour(spec, x, ln_scale),
        Strategy::Auto => auto(spec, x, ln_scale),
    }
}

fn auto(spec: &MeijerGSpec, x: f64, ln_scale: f64) -> Result<MeijerValue, SpecFunError> {
    let series = match build_slater_expansion(spec) {
        Ok(expansion) => expansion.evaluate(x, ln_scale).map(|v| MeijerValue {
            value: v.value,
            accuracy: Accuracy::Clean,
            method: MeijerMethod::Slater,
            rel_error: v.rel_error,
        }),
        Err(SpecFunError::DegenerateParameters { .. }) => {
            perturbed(spec, x, ln_scale).map(PerturbedValue::into_value)
        }
        Err(e) => Err(e),
    };
    let tol = match &series {
        Ok(v) if v.method == MeijerMethod::Slater => AUTO_CLEAN_TOL,
        _ => AUTO_PERTURBED_TOL,
    };
    if let Ok(v) = &series {
        if v.rel_error <= tol {
            return Ok(*v);
        }
    }
    let best = match (series, contour::meijer_g_contour(spec, x, ln_scale)) {
        (Ok(s), Ok(c)) => {
            if c.rel_error <= s.rel_error {
                c
            } else {
                s
            }
        }
        (Ok(s), Err(_)) => s,
        (Err(_), Ok(c)) => c,
        (Err(e), Err(_)) => return Err(e),
    };
    if best.rel_error > PERTURBED_MAX_REL_ERR {
        return Err(SpecFunError::Unresolved {
            value: best.value,
            rel_error: best.rel_error,
        });
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy)]
struct PerturbedValue {
    value: f64,
    plus: f64,
    minus: f64,
    rel_error: f64,
}

impl PerturbedValue {
    fn into_value(self) -> MeijerValue {
        MeijerValue {
            value: self.value,
            accuracy: Accuracy::Perturbed,
            method: MeijerMethod::Perturbed,
            rel_error: self.rel_error,
        }
    }
}

/// Per-parameter shift directions: within each group of integer-separated
/// lower parameters the k-th member (ordered by its offset) moves by
/// k·ε_group, so coincident members separate by at least ε_group.
fn perturbation_offsets(b: &[f64], m: usize) -> Vec<f64> {
    let mut group_of = vec![usize::MAX; m];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for h in 0..m {
        if group_of[h] != usize::MAX {
            continue;
        }
        let g = groups.len();
        let mut members = vec![h];
        group_of[h] = g;
        for j in (h + 1)..m {
            if group_of[j] == usize::MAX && near_integer(b[j] - b[h]) {
                group_of[j] = g;
                members.push(j);
            }
        }
        groups.push(members);
    }
    let mut shift = vec![0.0; m];
    for members in &groups {
        let base = b[members[0]];
        let eps =
            PERTURBATION_SCALE * (1.0 + members.iter().map(|&j| b[j].abs()).fold(0.0, f64::max));
        let mut ordered = members.clone();
        ordered.sort_by(|&i, &j| {
            let oi = (b[i] - base) - (b[i] - base).round();
            let oj = (b[j] - base) - (b[j] - base).round();
            oi.total_cmp(&oj).then(i.cmp(&j))
        });
        for (rank, &j) in ordered.iter().enumerate() {
            shift[j] = (rank + 1) as f64 * eps;
        }
    }
    shift
}

fn shifted_value(
    spec: &MeijerGSpec,
    shift: &[f64],
    factor: f64,
    x: f64,
    ln_scale: f64,
) -> Result<SeriesValue, SpecFunError> {
    let mut s = spec.clone();
    for (bj, d) in s.b.iter_mut().zip(shift) {
        *bj += factor * d;
    }
    build_slater_expansion(&s)?.evaluate(x, ln_scale)
}

fn perturbed(spec: &MeijerGSpec, x: f64, ln_scale: f64) -> Result<PerturbedValue, SpecFunError> {
    let shift = perturbation_offsets(&spec.b, spec.m);
    let p1 = shifted_value(spec, &shift, 1.0, x, ln_scale)?;
    let m1 = shifted_value(spec, &shift, -1.0, x, ln_scale)?;
    let p2 = shifted_value(spec, &shift, 2.0, x, ln_scale)?;
    let m2 = shifted_value(spec, &shift, -2.0, x, ln_scale)?;
    let mean1 = 0.5 * (p1.value + m1.value);
    let mean2 = 0.5 * (p2.value + m2.value);
    // the symmetric mean has an O(ε²) bias; one Richardson step removes it
    let value = (4.0 * mean1 - mean2) / 3.0;
    let scale = value.abs().max(f64::MIN_POSITIVE);
    let bias = ((mean1 - mean2) / scale).powi(2);
    let rounding = [p1, m1, p2, m2]
        .iter()
        .map(|v| v.rel_error * v.value.abs())
        .fold(0.0, f64::max)
        * 2.0
        / scale;
    let rel_error = if [p1, m1, p2, m2].iter().any(|v| !v.rel_error.is_finite()) {
        f64::INFINITY
    } else {
        bias + rounding
    };
    Ok(PerturbedValue {
        value,
        plus: p1.value,
        minus: m1.value,
        rel_error,
    })
}
