//! Reference values computed by brute-force quadrature, sharing no code
//! with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Trapezoid rule on a smooth integrand that decays at both ends of
/// [lo, hi]; converges geometrically in the step for such functions.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, steps: usize) -> f64 {
    let h = (hi - lo) / steps as f64;
    let mut s = 0.5 * (f(lo) + f(hi));
    for i in 1..steps {
        s += f(lo + i as f64 * h);
    }
    s * h
}

/// Tanh-sinh quadrature on [a, b], refined until two levels agree.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let level = |step: f64| {
        let mut s = f(c) * PI / 2.0;
        let mut k = 1;
        loop {
            let t = k as f64 * step;
            let u = PI / 2.0 * t.sinh();
            let w = PI / 2.0 * t.cosh() / u.cosh().powi(2);
            if w < 1e-300 {
                break;
            }
            // distance from the endpoints without cancellation
            let gap = half * 2.0 / ((2.0 * u).exp() + 1.0);
            let (xl, xr) = (a + gap, b - gap);
            if xl > a {
                s += w * f(xl);
            }
            if xr < b {
                s += w * f(xr);
            }
            k += 1;
        }
        s * step * half
    };
    let mut step = 0.5;
    let mut prev = level(step);
    for _ in 0..10 {
        step /= 2.0;
        let cur = level(step);
        if (cur - prev).abs() <= tol * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// ∫_a^∞ f by t ↦ a + t/(1-t).
pub fn tanh_sinh_inf<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    tanh_sinh(
        |t| {
            let u = 1.0 - t;
            f(a + t / u) / (u * u)
        },
        0.0,
        1.0,
        tol,
    )
}

/// ln Γ(k) from ∫ e^{kv - e^v} dv.
pub fn ln_gamma_oracle(k: f64) -> f64 {
    let peak = k.ln();
    // left tail decays like e^{k(v - peak)}
    let lo = peak - 80.0 / k.min(1.0);
    let i = trapezoid(
        |v| (k * (v - peak) - v.exp() + k).exp(),
        lo,
        peak + 8.0,
        40_000,
    );
    i.ln() + k * peak - k
}

/// K_ν(x) = ∫_0^∞ e^{-x cosh t} cosh(νt) dt
pub fn bessel_k_oracle(nu: f64, x: f64) -> f64 {
    // even integrand: the half-line trapezoid inherits the full-line accuracy
    trapezoid(
        |t| (-x * t.cosh()).exp() * (nu * t).cosh(),
        0.0,
        30.0,
        60_000,
    )
}

/// Unit-mean Gamma density with shape k.
pub fn gamma_pdf(k: f64, ln_gamma_k: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (k * k.ln() + (k - 1.0) * x.ln() - k * x - ln_gamma_k).exp()
}

/// Gamma-Gamma density as the law of a product of two unit-mean Gamma
/// variates, integrated over the log of one factor.
pub fn gg_pdf_oracle(alpha: f64, beta: f64, z: f64) -> f64 {
    let (la, lb) = (ln_gamma_oracle(alpha), ln_gamma_oracle(beta));
    trapezoid(
        |v| {
            let x = v.exp();
            gamma_pdf(alpha, la, x) * gamma_pdf(beta, lb, z / x)
        },
        -25.0,
        25.0,
        20_000,
    )
}

/// Pointing-error density ξ x^{ξ-1} / A^ξ on [0, A].
pub fn pe_pdf(xi: f64, a_o: f64, x: f64) -> f64 {
    if x <= 0.0 || x > a_o {
        return 0.0;
    }
    xi / a_o * (x / a_o).powf(xi - 1.0)
}

/// Density of a product X·Y by f_{XY}(z) = ∫ f_X(x) f_Y(z/x) / x dx over
/// the support [lo, hi] of X.
pub fn product_pdf<FX, FY>(fx: FX, fy: FY, z: f64, lo: f64, hi: f64, tol: f64) -> f64
where
    FX: Fn(f64) -> f64,
    FY: Fn(f64) -> f64,
{
    tanh_sinh(|x| fx(x) * fy(z / x) / x, lo, hi, tol)
}
