//! Monte Carlo estimates by direct simulation of the channel products.
//!
//! A run of `n` draws is split over a fixed number of ChaCha streams, all
//! keyed by the same seed. Each stream owns a disjoint keystream, so the
//! result depends only on (seed, streams, n) and never on how many worker
//! threads executed the streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::distributions::{CompositeProduct, ZSampler};
use crate::{Error, Result};

pub const DEFAULT_STREAMS: u64 = 64;
pub const MIN_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
    pub streams: u64,
}

impl McEstimate {
    fn from_count(count: u64, n: u64, seed: u64, streams: u64) -> Self {
        let p = count as f64 / n as f64;
        McEstimate {
            value: p,
            std_error: (p * (1.0 - p) / n as f64).sqrt(),
            n,
            seed,
            streams,
        }
    }

    /// Whether `x` lies within `k` standard errors of the estimate.
    pub fn covers(&self, x: f64, k: f64) -> bool {
        (x - self.value).abs() <= k * self.std_error
    }
}

/// Generator for stream `s` of a run keyed by `seed`.
pub fn stream_rng(seed: u64, s: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(s);
    rng
}

fn stream_len(n: u64, streams: u64, s: u64) -> u64 {
    n / streams + u64::from(s < n % streams)
}

fn check_samples(n: u64) -> Result<()> {
    if n < MIN_SAMPLES {
        Err(Error::InvalidParameter(format!(
            "Monte Carlo runs need at least {MIN_SAMPLES} samples, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Counts draws satisfying `hit` over all streams.
fn count_hits<F>(n: u64, seed: u64, streams: u64, draw_hit: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    (0..streams)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream_rng(seed, s);
            (0..stream_len(n, streams, s))
                .filter(|_| draw_hit(&mut rng))
                .count() as u64
        })
        .sum()
}

/// `n` draws of Z, stream-major order.
pub fn mc_samples(ch: &CompositeProduct, n: u64, seed: u64) -> Vec<f64> {
    let sampler = ZSampler::new(ch);
    let parts: Vec<Vec<f64>> = (0..DEFAULT_STREAMS)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream_rng(seed, s);
            (0..stream_len(n, DEFAULT_STREAMS, s))
                .map(|_| sampler.sample(&mut rng))
                .collect()
        })
        .collect();
    parts.concat()
}

/// Empirical Pr(Z ≤ x).
pub fn mc_cdf(ch: &CompositeProduct, x: f64, n: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let sampler = ZSampler::new(ch);
    let count = count_hits(n, seed, DEFAULT_STREAMS, |rng| sampler.sample(rng) <= x);
    Ok(McEstimate::from_count(count, n, seed, DEFAULT_STREAMS))
}

/// Empirical outage of `branches` identical parallel branches:
/// Pr(S ≤ √(ρ_th/(Nρ_s))) with S the mean of the branch gains.
pub fn mc_op_parallel(
    branches: usize,
    branch: &CompositeProduct,
    rho_ratio: f64,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_samples(n)?;
    if branches == 0 {
        return Err(Error::InvalidParameter(
            "at least one branch is required".into(),
        ));
    }
    let nb = branches as f64;
    let t = (1.0 / (nb * rho_ratio)).sqrt();
    let sampler = ZSampler::new(branch);
    let count = count_hits(n, seed, DEFAULT_STREAMS, |rng| {
        let sum: f64 = (0..branches).map(|_| sampler.sample(rng)).sum();
        sum / nb <= t
    });
    Ok(McEstimate::from_count(count, n, seed, DEFAULT_STREAMS))
}

/// Empirical outage of the terahertz cascade, thresholding the
/// signal-to-distortion-plus-noise ratio of each draw.
#[allow(clippy::too_many_arguments)]
pub fn mc_op_thz(
    ch: &CompositeProduct,
    gamma_ratio: f64,
    gamma_th: f64,
    kappa_t: f64,
    kappa_r: f64,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_samples(n)?;
    let gs = gamma_ratio * gamma_th;
    let k2 = kappa_t * kappa_t + kappa_r * kappa_r;
    let sampler = ZSampler::new(ch);
    let count = count_hits(n, seed, DEFAULT_STREAMS, |rng| {
        let a = sampler.sample(rng);
        let s = a * a * gs;
        s / (s * k2 + 1.0) <= gamma_th
    });
    Ok(McEstimate::from_count(count, n, seed, DEFAULT_STREAMS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::TurbulencePreset;
    use crate::distributions::{z_cdf, PointingErrorParams};

    fn fixture() -> CompositeProduct {
        let w = TurbulencePreset::Weak.params();
        let pe = PointingErrorParams::new(1.2, 0.8).unwrap();
        CompositeProduct::new(vec![w, w], vec![pe]).unwrap()
    }

    #[test]
    fn stream_split_covers_n() {
        let total: u64 = (0..7).map(|s| stream_len(100, 7, s)).sum();
        assert_eq!(total, 100);
    }

    #[test]
    fn rejects_small_runs() {
        assert!(mc_cdf(&fixture(), 0.3, 100, 1).is_err());
    }

    #[test]
    fn extremes() {
        let ch = fixture();
        assert_eq!(mc_cdf(&ch, 0.0, 20_000, 3).unwrap().value, 0.0);
        assert_eq!(mc_cdf(&ch, f64::INFINITY, 20_000, 3).unwrap().value, 1.0);
    }

    #[test]
    fn agrees_with_cdf() {
        let ch = fixture();
        let e = mc_cdf(&ch, 0.3, 200_000, 11).unwrap();
        let exact = z_cdf(&ch, 0.3).unwrap().value;
        assert!(e.covers(exact, 3.0), "{e:?} vs {exact}");
    }

    #[test]
    fn independent_of_thread_count() {
        let ch = fixture();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| mc_cdf(&ch, 0.3, 50_000, 5).unwrap());
        let b = four.install(|| mc_cdf(&ch, 0.3, 50_000, 5).unwrap());
        assert_eq!(a, b);
        let c = one.install(|| mc_samples(&ch, 10_001, 5));
        let d = four.install(|| mc_samples(&ch, 10_001, 5));
        assert_eq!(c, d);
    }

    #[test]
    fn single_branch_parallel_is_cdf() {
        let ch = fixture();
        let r = 50.0;
        let p = mc_op_parallel(1, &ch, r, 20_000, 9).unwrap();
        let c = mc_cdf(&ch, (1.0 / r).sqrt(), 20_000, 9).unwrap();
        assert_eq!(p.value, c.value);
    }

    #[test]
    fn thz_reduces_and_saturates() {
        let ch = fixture();
        let r = 100.0;
        let t = mc_op_thz(&ch, r, 3.0, 0.0, 0.0, 20_000, 2).unwrap();
        let c = mc_cdf(&ch, (1.0 / r).sqrt(), 20_000, 2).unwrap();
        assert!((t.value - c.value).abs() <= 1.0 / 20_000.0);
        let sat = mc_op_thz(&ch, r, 1.0 / 0.32 + 1e-9, 0.4, 0.4, 20_000, 2).unwrap();
        assert_eq!(sat.value, 1.0);
        assert_eq!(sat.std_error, 0.0);
    }
}
