//! Generalized hypergeometric series pFq for real parameters.

use super::SpecFunError;

pub const PFQ_MAX_TERMS: usize = 10_000;
pub const PFQ_DEFAULT_TOL: f64 = 1e-12;

/// Result of a pFq summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfqValue {
    pub value: f64,
    /// Σ |term_k|; compared against |value| it measures cancellation.
    pub abs_sum: f64,
    /// Absolute rounding bound, including the effect of one rounding error
    /// in each parameter (large when a lower parameter sits near a pole).
    pub abs_error: f64,
    pub terms: usize,
    /// Estimated relative error from truncation and cancellation.
    pub rel_error: f64,
    /// `rel_error <= tol`.
    pub converged: bool,
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Σ_k Π(a)_k / Π(b)_k · z^k / k!
///
/// Requires p ≤ q + 1 with |z| < 1 when p = q + 1. Summation stops once a
/// term is below `tol · |partial sum|` past the largest term.
pub fn pfq(a: &[f64], b: &[f64], z: f64, tol: f64) -> Result<PfqValue, SpecFunError> {
    if let Some(&bad) = b.iter().find(|&&bj| is_non_positive_integer(bj)) {
        return Err(SpecFunError::Domain {
            function: "pfq",
            arg: bad,
        });
    }
    if a.len() > b.len() + 1 || (a.len() == b.len() + 1 && z.abs() >= 1.0) {
        return Err(SpecFunError::UnsupportedSpec(format!(
            "{}F{} diverges at z = {z}",
            a.len(),
            b.len()
        )));
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut abs_sum = 1.0_f64;
    let mut abs_error = 0.0_f64;
    // relative error carried by the current term
    let mut term_rel = 0.0_f64;
    for k in 0..PFQ_MAX_TERMS {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        let mut cond = 3.0;
        for &ai in a {
            let f = ai + kf;
            ratio *= f;
            if f != 0.0 {
                cond += 1.0 + ai.abs() / f.abs();
            }
        }
        for &bj in b {
            let f = bj + kf;
            ratio /= f;
            cond += 1.0 + bj.abs() / f.abs();
        }
        let next = term * ratio;
        term_rel += cond * f64::EPSILON;
        sum += next;
        abs_sum += next.abs();
        abs_error += next.abs() * term_rel;
        term = next;
        if term == 0.0 {
            return Ok(finish(sum, abs_sum, abs_error, k + 2, 0.0, tol));
        }
        // only trust the stopping test once terms are shrinking fast
        if ratio.abs() < 0.5 && term.abs() <= tol * sum.abs() {
            let tail = term.abs() * ratio.abs() / (1.0 - ratio.abs());
            return Ok(finish(sum, abs_sum, abs_error, k + 2, tail, tol));
        }
        if !sum.is_finite() {
            return Err(SpecFunError::SeriesOverflow {
                terms: k + 2,
                last_term: term,
                partial_sum: sum,
            });
        }
    }
    Err(SpecFunError::SeriesOverflow {
        terms: PFQ_MAX_TERMS,
        last_term: term,
        partial_sum: sum,
    })
}

fn finish(sum: f64, abs_sum: f64, abs_error: f64, terms: usize, tail: f64, tol: f64) -> PfqValue {
    let rounding = abs_sum * f64::EPSILON * 2.0 + abs_error;
    let rel_error = if sum == 0.0 {
        f64::INFINITY
    } else {
        (tail + rounding) / sum.abs()
    };
    PfqValue {
        value: sum,
        abs_sum,
        abs_error: rounding,
        terms,
        rel_error,
        converged: rel_error <= tol.max(8.0 * f64::EPSILON),
    }
}
