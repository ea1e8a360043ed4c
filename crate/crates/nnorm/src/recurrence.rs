//! Monte-Carlo recurrence experiments for interval maps.
//!
//! The recurrence rate of T at x is r(T, x) = liminf n·|Tⁿx − x|; for any
//! Lebesgue-preserving map of [0, 1) it is at most 1/√5 almost everywhere.
//! The finite-horizon running minimum can only over-estimate the liminf,
//! so every report here is labelled with its horizon and the experiments
//! track the trend across doubling horizons rather than pretending the
//! limit is computable.
//!
//! All quantities are stated for the map normalized to [0, 1): positions
//! and displacements are divided by |λ|, so thresholds are comparable
//! across IETs of different total length.
//!
//! Sampling is deterministic: a seeded ChaCha8 generator with one stream
//! per sample index, plus an interleaved uniform grid, so identical
//! configurations reproduce bit-identical summaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::iet::{Iet, IetError};
use crate::scalar::Scalar;

/// Identity of the sample generator, recorded in every summary.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Running minimum of n·|Tⁿx − x|/|λ| for one start point.
#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceSample {
    pub x0: f64,
    pub horizon: usize,
    /// min over 1 ≤ n ≤ horizon of n·|Tⁿx − x|/|λ| (normalized).
    pub min_value: f64,
    pub argmin: usize,
    /// The orbit loop stopped at this n because the running minimum fell
    /// below the requested early-exit threshold (the minimum can only keep
    /// decreasing afterwards).
    pub stopped_at: Option<usize>,
}

/// Exact-mode single-sample run; the float harnesses below use the same
/// loop on `F64`.
pub fn recurrence_rate_sample<S: Scalar>(
    iet: &Iet<S>,
    x0: &S,
    horizon: usize,
    stop_below: Option<f64>,
) -> Result<RecurrenceSample, IetError> {
    if x0.signum_i() < 0 || *x0 >= *iet.total() {
        return Err(IetError::OutOfDomain {
            x: x0.literal(),
            total: iet.total().literal(),
        });
    }
    let total = iet.total().to_f64();
    let mut x = x0.clone();
    let mut min_value = f64::INFINITY;
    let mut argmin = 0usize;
    let mut stopped_at = None;
    for n in 1..=horizon {
        x = iet.apply(&x).expect("orbit stays in domain");
        let disp = x.ref_sub(x0).abs().to_f64() / total;
        let v = n as f64 * disp;
        if v < min_value {
            min_value = v;
            argmin = n;
        }
        if let Some(threshold) = stop_below {
            if min_value <= threshold {
                stopped_at = Some(n);
                break;
            }
        }
    }
    Ok(RecurrenceSample {
        x0: x0.to_f64() / total,
        horizon,
        min_value,
        argmin,
        stopped_at,
    })
}

/// How start points are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sampling {
    /// Uniform random points only.
    Random,
    /// Uniform grid only (offset half a cell from the endpoints).
    Grid,
    /// Half grid, half random — the default, so measure-zero pathologies
    /// and Monte-Carlo noise are distinguishable.
    GridAndRandom,
}

fn draw_samples(
    iet: &Iet<super::scalar::F64>,
    count: usize,
    seed: u64,
    mode: Sampling,
) -> Vec<f64> {
    let total = iet.total().to_f64();
    let mut xs = Vec::with_capacity(count);
    let (grid_n, random_n) = match mode {
        Sampling::Random => (0, count),
        Sampling::Grid => (count, 0),
        Sampling::GridAndRandom => (count / 2, count - count / 2),
    };
    for i in 0..grid_n {
        xs.push((i as f64 + 0.5) / grid_n as f64 * total);
    }
    for i in 0..random_n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        xs.push(rng.gen_range(0.0..total));
    }
    xs
}

/// Summary of the almost-everywhere recurrence experiment: the fraction of
/// sampled points whose normalized running minimum reaches 1/√5 + tol
/// within the horizon.
#[derive(Clone, Debug, Serialize)]
pub struct Thm12Summary {
    pub samples: usize,
    pub horizon: usize,
    pub tol: f64,
    pub threshold: f64,
    pub fraction_below: f64,
    /// Start points (normalized) that stayed above the threshold.
    pub failures: Vec<f64>,
    /// Histogram of running minima, right-censored at the threshold when
    /// early exit is on: (bin_lo, bin_hi, count).
    pub histogram: Vec<(f64, f64, usize)>,
    pub censored: bool,
    pub sampling: Sampling,
    pub seed: u64,
    pub rng: &'static str,
}

pub fn theorem12_experiment(
    iet: &Iet<super::scalar::F64>,
    samples: usize,
    horizon: usize,
    seed: u64,
    tol: f64,
    sampling: Sampling,
    early_exit: bool,
) -> Thm12Summary {
    let threshold = 1.0 / 5f64.sqrt() + tol;
    let xs = draw_samples(iet, samples, seed, sampling);
    let mut mins = Vec::with_capacity(xs.len());
    let mut failures = Vec::new();
    for &x in &xs {
        let sample = recurrence_rate_sample(
            iet,
            &super::scalar::F64::new(x),
            horizon,
            early_exit.then_some(threshold),
        )
        .expect("sample in domain");
        if sample.min_value > threshold {
            failures.push(sample.x0);
        }
        mins.push(sample.min_value);
    }
    let below = mins.iter().filter(|&&m| m <= threshold).count();
    let fraction_below = below as f64 / mins.len().max(1) as f64;

    // Histogram over [0, cap] with 20 bins, cap at the threshold times 2 so
    // censored mass lands in the top bin.
    let cap = threshold * 2.0;
    let bins = 20usize;
    let mut histogram = Vec::with_capacity(bins);
    let mut counts = vec![0usize; bins];
    for &m in &mins {
        let b = ((m / cap * bins as f64) as usize).min(bins - 1);
        counts[b] += 1;
    }
    for (b, &c) in counts.iter().enumerate() {
        histogram.push((
            cap * b as f64 / bins as f64,
            cap * (b + 1) as f64 / bins as f64,
            c,
        ));
    }

    Thm12Summary {
        samples: xs.len(),
        horizon,
        tol,
        threshold,
        fraction_below,
        failures,
        histogram,
        censored: early_exit,
        sampling,
        seed,
        rng: RNG_ALGORITHM,
    }
}

/// ρ(x, V) at finite horizon: inf over 1 ≤ n ≤ N with Tⁿx ∈ V of
/// n·|Tⁿx − x|/|λ| (normalized coordinates; V ⊆ [0, 1)).
///
/// Over-estimates the true infimum, and is non-increasing in N.
pub fn rho_finite(
    iet: &Iet<super::scalar::F64>,
    x0: f64,
    v: (f64, f64),
    horizon: usize,
    checkpoints: &[usize],
    stop_below: Option<f64>,
) -> Vec<f64> {
    let total = iet.total().to_f64();
    let mut x = super::scalar::F64::new(x0 * total);
    let x0_raw = x;
    let mut rho = f64::INFINITY;
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut ci = 0usize;
    for n in 1..=horizon {
        x = iet.apply(&x).expect("orbit in domain");
        let pos = x.get() / total;
        if pos >= v.0 && pos < v.1 {
            let disp = (x.get() - x0_raw.get()).abs() / total;
            let val = n as f64 * disp;
            if val < rho {
                rho = val;
            }
        }
        while ci < checkpoints.len() && checkpoints[ci] == n {
            out.push(rho);
            ci += 1;
        }
        if let Some(t) = stop_below {
            if rho < t {
                break;
            }
        }
    }
    while ci < checkpoints.len() {
        out.push(rho);
        ci += 1;
    }
    out
}

/// One row of the badly-recurrent-measure experiment: the estimate of
/// μ(V_r) at each doubling horizon, its bound μ(V)/(r√5), and the binomial
/// standard error at the final horizon.
#[derive(Clone, Debug, Serialize)]
pub struct Prop31Summary {
    pub r: f64,
    pub v: (f64, f64),
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
    /// (horizon, estimate of μ(V_r) at that horizon).
    pub estimates: Vec<(usize, f64)>,
    pub final_estimate: f64,
    pub bound: f64,
    pub std_error: f64,
    /// final_estimate ≤ bound + 2·std_error.
    pub within_bound: bool,
    /// Estimates never increase along the doubling horizons (they cannot:
    /// ρ_N is non-increasing in N per sample).
    pub monotone: bool,
}

/// Estimates μ(V_r) = μ{x ∈ V : ρ(x, V) ≥ r} for each r, by uniform
/// sampling in V, reporting the finite-horizon trend across doubling
/// horizons up to `horizon`.
pub fn prop31_experiment(
    iet: &Iet<super::scalar::F64>,
    v: (f64, f64),
    rs: &[f64],
    samples: usize,
    horizon: usize,
    seed: u64,
) -> Vec<Prop31Summary> {
    assert!(
        v.0 >= 0.0 && v.1 <= 1.0 && v.0 < v.1,
        "V must sit inside [0,1)"
    );
    let mu_v = v.1 - v.0;
    // Doubling checkpoints 1000, 2000, 4000, … capped by the horizon.
    let mut checkpoints = Vec::new();
    let mut h = 1000.min(horizon);
    while h < horizon {
        checkpoints.push(h);
        h = h.saturating_mul(2);
    }
    checkpoints.push(horizon);
    checkpoints.dedup();

    let min_r = rs.iter().cloned().fold(f64::INFINITY, f64::min);
    // Per-sample ρ at each checkpoint.
    let mut rho_rows: Vec<Vec<f64>> = Vec::with_capacity(samples);
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let x0 = rng.gen_range(v.0..v.1);
        rho_rows.push(rho_finite(iet, x0, v, horizon, &checkpoints, Some(min_r)));
    }

    rs.iter()
        .map(|&r| {
            let estimates: Vec<(usize, f64)> = checkpoints
                .iter()
                .enumerate()
                .map(|(ci, &n)| {
                    let count = rho_rows.iter().filter(|row| row[ci] >= r).count();
                    (n, mu_v * count as f64 / samples as f64)
                })
                .collect();
            let final_estimate = estimates.last().unwrap().1;
            let p_hat = final_estimate / mu_v;
            let std_error = mu_v * (p_hat * (1.0 - p_hat) / samples as f64).sqrt();
            let bound = mu_v / (r * 5f64.sqrt());
            let monotone = estimates.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
            Prop31Summary {
                r,
                v,
                samples,
                seed,
                rng: RNG_ALGORITHM,
                estimates,
                final_estimate,
                bound,
                std_error,
                within_bound: final_estimate <= bound + 2.0 * std_error,
                monotone,
            }
        })
        .collect()
}
