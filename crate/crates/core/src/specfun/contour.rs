//! Mellin–Barnes evaluation of the supported Meijer-G classes.
//!
//! G(x) = (1/π) ∫_0^∞ Re[Φ(c+it) x^{c+it}] dt on a vertical line that keeps the
//! poles of Γ(b_j − s) (j ≤ m) on its right. The line is placed at the minimum
//! of ln|Φ(c)| + c·ln x over the admissible range, which is the saddle point of
//! the integrand and keeps the oscillatory cancellation small.
//!
//! In the distribution class the pair Γ(1 − a_1 + s)/Γ(2 − a_1 + s) collapses
//! to 1/(s − s0) with s0 = a_1 − 1. The line may sit on either side of that
//! single pole; on the left the residue is added back.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_gamma_complex, ln_gamma_signed};
use super::meijer::{Accuracy, MeijerClass, MeijerGSpec, MeijerMethod, MeijerValue};
use super::quad::integrate;
use super::SpecFunError;

// integrand modulus, relative to its value at t = 0, below which the tail is dropped
const TAIL_CUTOFF: f64 = 1e-18;
const QUAD_REL_TOL: f64 = 1e-13;
const MAX_PANELS: usize = 4000;
const SEARCH_SPAN: f64 = 4000.0;

struct Integrand<'a> {
    spec: &'a MeijerGSpec,
    /// index of the lower parameter cancelled against a_1, if any
    cancelled: Option<usize>,
    s0: f64,
    /// `paired_b[k]`: Γ(b_k − s)/Γ(b_k + 1 − s) collapses to 1/(b_k − s)
    paired_b: Vec<bool>,
    paired_a: Vec<bool>,
}

impl<'a> Integrand<'a> {
    fn new(spec: &'a MeijerGSpec) -> Self {
        let mut paired_b = vec![false; spec.b.len()];
        let mut paired_a = vec![false; spec.a.len()];
        for (j, aj) in spec.a.iter().enumerate().skip(spec.n) {
            if let Some(k) = (0..spec.m).find(|&k| !paired_b[k] && aj - spec.b[k] == 1.0) {
                paired_b[k] = true;
                paired_a[j] = true;
            }
        }
        Integrand {
            spec,
            cancelled: None,
            s0: f64::NAN,
            paired_b,
            paired_a,
        }
    }
}

impl Integrand<'_> {
    fn ln_phi(&self, s: Complex64) -> Complex64 {
        let spec = self.spec;
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &bj) in spec.b.iter().enumerate() {
            if self.paired_b[j] {
                acc -= (bj - s).ln();
            } else if j < spec.m {
                acc += ln_gamma_complex(bj - s);
            } else if Some(j) != self.cancelled {
                acc -= ln_gamma_complex(one - bj + s);
            }
        }
        for (j, &aj) in spec.a.iter().enumerate() {
            if j < spec.n {
                if self.cancelled.is_some() {
                    acc -= (s - self.s0).ln();
                } else {
                    acc += ln_gamma_complex(one - aj + s);
                }
            } else if !self.paired_a[j] {
                acc -= ln_gamma_complex(aj - s);
            }
        }
        acc
    }

    /// (ln|Φ(c)|, sign Φ(c)) on the real axis.
    fn ln_phi_real(&self, c: f64) -> Option<(f64, f64)> {
        let spec = self.spec;
        let mut acc = 0.0;
        let mut sign = 1.0;
        let mut add = |arg: f64, plus: bool| -> Option<()> {
            let (lg, s) = ln_gamma_signed(arg).ok()?;
            if plus {
                acc += lg;
            } else {
                acc -= lg;
            }
            sign *= s;
            Some(())
        };
        let mut paired = 0.0;
        for (j, &bj) in spec.b.iter().enumerate() {
            if self.paired_b[j] {
                // the line stays left of every lower pole, so b_j − c > 0
                paired -= (bj - c).ln();
            } else if j < spec.m {
                add(bj - c, true)?;
            } else if Some(j) != self.cancelled {
                add(1.0 - bj + c, false)?;
            }
        }
        for (j, &aj) in spec.a.iter().enumerate() {
            if j < spec.n {
                if self.cancelled.is_none() {
                    add(1.0 - aj + c, true)?;
                }
            } else if !self.paired_a[j] {
                add(aj - c, false)?;
            }
        }
        acc += paired;
        if self.cancelled.is_some() {
            let d = c - self.s0;
            if d == 0.0 {
                return None;
            }
            acc -= d.abs().ln();
            sign *= d.signum();
        }
        Some((acc, sign))
    }

    fn height(&self, c: f64, lx: f64) -> f64 {
        match self.ln_phi_real(c) {
            Some((l, _)) if l.is_finite() => l + c * lx,
            _ => f64::INFINITY,
        }
    }
}

/// Minimises `h` on (lo, hi) by a coarse scan followed by golden-section
/// refinement. Both endpoints are excluded.
fn minimise(h: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    // points cluster towards both endpoints where h is steep
    let width = hi - lo;
    let mut grid: Vec<f64> = Vec::new();
    if width.is_finite() {
        let n = 48;
        for k in 1..n {
            let u = k as f64 / n as f64;
            grid.push(lo + width * u);
        }
        let mut d = width * 1e-3;
        while d < width / 48.0 {
            grid.push(lo + d);
            grid.push(hi - d);
            d *= 2.0;
        }
    } else {
        let mut d = 1e-3;
        while d < SEARCH_SPAN {
            grid.push(hi - d);
            d *= 1.25;
        }
    }
    grid.sort_by(f64::total_cmp);
    let values: Vec<f64> = grid.iter().map(|&c| h(c)).collect();
    let (k, &best) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    if !best.is_finite() {
        return None;
    }
    let mut a = if k == 0 {
        lo.max(grid[0] - 1.0)
    } else {
        grid[k - 1]
    };
    let mut b = if k + 1 == grid.len() { hi } else { grid[k + 1] };
    if !a.is_finite() {
        a = grid[0] - 1.0;
    }
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c1 = b - phi * (b - a);
    let mut c2 = a + phi * (b - a);
    let mut h1 = h(c1);
    let mut h2 = h(c2);
    for _ in 0..80 {
        if (b - a).abs() < 1e-9 * (1.0 + c1.abs()) {
            break;
        }
        if h1 < h2 {
            b = c2;
            c2 = c1;
            h2 = h1;
            c1 = b - phi * (b - a);
            h1 = h(c1);
        } else {
            a = c1;
            c1 = c2;
            h1 = h2;
            c2 = a + phi * (b - a);
            h2 = h(c2);
        }
    }
    let (c, hc) = if h1 < h2 { (c1, h1) } else { (c2, h2) };
    if hc <= best {
        Some((c, hc))
    } else {
        Some((grid[k], best))
    }
}

pub fn meijer_g_contour(
    spec: &MeijerGSpec,
    x: f64,
    ln_scale: f64,
) -> Result<MeijerValue, SpecFunError> {
    let class = spec.class()?;
    let lx = x.ln();
    let hi = spec.b[..spec.m]
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let mut integrand = Integrand::new(spec);
    // admissible intervals for the line
    let mut windows: Vec<(f64, f64)> = Vec::new();
    match class {
        MeijerClass::Density => windows.push((f64::NEG_INFINITY, hi)),
        MeijerClass::Distribution => {
            let a1 = spec.a[0];
            let s0 = a1 - 1.0;
            integrand.s0 = s0;
            integrand.cancelled = spec.b[spec.m..]
                .iter()
                .position(|&bj| bj == s0)
                .map(|k| k + spec.m);
            if s0 >= hi {
                return Err(SpecFunError::UnsupportedSpec(
                    "upper parameter overlaps the lower poles".to_string(),
                ));
            }
            windows.push((s0, hi));
            if integrand.cancelled.is_some() {
                windows.push((f64::NEG_INFINITY, s0));
            }
        }
    }
    let mut best: Option<(f64, f64)> = None;
    for &(lo, up) in &windows {
        if let Some((c, h)) = minimise(|c| integrand.height(c, lx), lo, up) {
            if best.is_none_or(|(_, hb)| h < hb) {
                best = Some((c, h));
            }
        }
    }
    let (c, h) = best.ok_or_else(|| {
        SpecFunError::UnsupportedSpec("no admissible integration line".to_string())
    })?;

    let normalised = |t: f64| -> Complex64 {
        let s = Complex64::new(c, t);
        (integrand.ln_phi(s) + s * lx - h).exp()
    };
    // tail cut-off from the integrand modulus
    let mut t_max = 1.0;
    let mut peak: f64 = 1.0;
    let step = 0.5 * (1.0 + c.abs()).sqrt();
    let mut t = 0.0;
    let mut below = 0;
    while below < 4 {
        t += step;
        let mag = normalised(t).norm();
        if !mag.is_finite() {
            break;
        }
        peak = peak.max(mag);
        if mag < TAIL_CUTOFF * peak {
            below += 1;
        } else {
            below = 0;
            t_max = t;
        }
        if t > 1e4 {
            return Err(SpecFunError::UnsupportedSpec(
                "contour integrand does not decay".to_string(),
            ));
        }
    }
    let t_end = t_max + 2.0 * step;
    // no point resolving below the rounding in ln Γ of large complex arguments
    let rounding = peak * t_end * 1e-14 * (1.0 + h.abs() + c.abs());
    let q = integrate(
        |t| normalised(t).re,
        0.0,
        t_end,
        0.1 * rounding,
        QUAD_REL_TOL,
        MAX_PANELS,
    )?;
    let scale = (h + ln_scale).exp();
    let mut value = scale * q.value / PI;
    let mut abs_err = scale * (q.abs_error + 1e-15 * peak * t_end) / PI;
    if integrand.cancelled.is_some() && c < integrand.s0 {
        let (lr, sr) = residue(&integrand, lx);
        let res = sr * (lr + ln_scale).exp();
        value += res;
        abs_err += res.abs() * 1e-14;
    }
    abs_err += scale * rounding / PI;
    if !value.is_finite() {
        return Err(SpecFunError::Overflow {
            function: "meijer_g",
            nu: c,
            x,
        });
    }
    let rel_error = if value == 0.0 {
        f64::INFINITY
    } else {
        abs_err / value.abs()
    };
    Ok(MeijerValue {
        value,
        accuracy: Accuracy::Clean,
        method: MeijerMethod::Contour,
        rel_error,
    })
}

/// Residue of Φ(s)x^s at s0, as (ln|r|, sign r).
fn residue(integrand: &Integrand<'_>, lx: f64) -> (f64, f64) {
    let spec = integrand.spec;
    let s0 = integrand.s0;
    let mut acc = s0 * lx;
    let mut sign = 1.0;
    for (j, &bj) in spec.b.iter().enumerate() {
        if integrand.paired_b[j] {
            let d = bj - s0;
            acc -= d.abs().ln();
            sign *= d.signum();
            continue;
        }
        let (arg, plus) = if j < spec.m {
            (bj - s0, true)
        } else if Some(j) != integrand.cancelled {
            (1.0 - bj + s0, false)
        } else {
            continue;
        };
        match ln_gamma_signed(arg) {
            Ok((lg, s)) => {
                acc += if plus { lg } else { -lg };
                sign *= s;
            }
            Err(_) => return (f64::NEG_INFINITY, 0.0),
        }
    }
    for (j, &aj) in spec.a.iter().enumerate().skip(spec.n) {
        if integrand.paired_a[j] {
            continue;
        }
        match ln_gamma_signed(aj - s0) {
            Ok((lg, s)) => {
                acc -= lg;
                sign *= s;
            }
            Err(_) => return (f64::NEG_INFINITY, 0.0),
        }
    }
    (acc, sign)
}
