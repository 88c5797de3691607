//! The 0-1 test for chaos on scalar time series.
//!
//! A series `φ(1..N)` is lifted to a planar walk
//!
//! ```text
//! p(n) = Σ_{j=1..n} φ(j)·cos(jc)      s(n) = Σ_{j=1..n} φ(j)·sin(jc)
//! ```
//!
//! for a test frequency `c`. Chaotic dynamics make the walk diffusive —
//! its mean-square displacement grows linearly in `n` — while regular
//! dynamics keep it bounded. The correlation `K_c` between `n` and the
//! displacement statistic is ≈ 1 in the first case and ≈ 0 in the second.
//!
//! Two standard refinements are built in: the displacement is the
//! *modified* form `D(n) = M(n) − V_osc(n)`, which subtracts the bounded
//! oscillatory term `V_osc(n) = (E φ)²·(1 − cos nc)/(1 − cos c)` so that
//! convergence in `n` is usable at finite sample sizes, and the final
//! statistic `K` is the median of `K_c` over randomly drawn frequencies,
//! which suppresses the isolated resonant `c` values any single draw can
//! hit.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChaosError {
    #[error("need at least {min} observations for the 0-1 test, got {len}")]
    SeriesTooShort { len: usize, min: usize },
    #[error("displacement cutoff {cutoff} must be in 1..length ({len})")]
    BadCutoff { cutoff: usize, len: usize },
    #[error("frequency band [{c_min}, {c_max}] must satisfy 0 < c_min < c_max < pi")]
    BadBand { c_min: f64, c_max: f64 },
    #[error("msd_cutoff_fraction {0} must lie in (0, 0.5]")]
    BadFraction(f64),
    #[error("n_c must be at least 1")]
    NoFrequencies,
    #[error("p, s, and series lengths differ: {p}, {s}, {series}")]
    LengthMismatch { p: usize, s: usize, series: usize },
    #[error("series contains a non-finite value at index {0}")]
    NonFinite(usize),
}

/// Tuning knobs for [`k_statistic`]. Defaults follow the standard
/// practitioner choices: 100 frequencies uniform on (π/5, 4π/5) and a
/// displacement cutoff of N/10.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosConfig {
    /// Number of random test frequencies.
    pub n_c: usize,
    /// Lower edge of the frequency band, radians.
    pub c_min: f64,
    /// Upper edge of the frequency band, radians.
    pub c_max: f64,
    /// Displacement statistics use lags `1..⌊N·fraction⌋`.
    pub msd_cutoff_fraction: f64,
    /// Seed for the frequency draw; fixed seed ⟹ identical result.
    pub rng_seed: u64,
}

impl Default for ChaosConfig {
    fn default() -> Self {
        ChaosConfig {
            n_c: 100,
            c_min: PI / 5.0,
            c_max: 4.0 * PI / 5.0,
            msd_cutoff_fraction: 0.1,
            rng_seed: 0,
        }
    }
}

impl ChaosConfig {
    pub fn validate(&self) -> Result<(), ChaosError> {
        if self.n_c == 0 {
            return Err(ChaosError::NoFrequencies);
        }
        if !(self.c_min > 0.0 && self.c_min < self.c_max && self.c_max < PI) {
            return Err(ChaosError::BadBand {
                c_min: self.c_min,
                c_max: self.c_max,
            });
        }
        if !(self.msd_cutoff_fraction > 0.0 && self.msd_cutoff_fraction <= 0.5) {
            return Err(ChaosError::BadFraction(self.msd_cutoff_fraction));
        }
        Ok(())
    }
}

/// `K_c` for one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KcRecord {
    pub c: f64,
    pub k: f64,
    /// The displacement had zero variance (constant input); `k` is 0 by
    /// convention rather than by correlation.
    pub degenerate: bool,
}

/// Outcome of the full test: the median statistic, the per-frequency
/// records in draw order, and the translation walk for the frequency
/// whose `K_c` sits closest to the median (the representative picture of
/// "what the walk looked like").
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosResult {
    pub k_median: f64,
    pub k_per_c: Vec<KcRecord>,
    pub sample_c: f64,
    pub sample_p: Vec<f64>,
    pub sample_s: Vec<f64>,
}

/// The translation walk `(p(n), s(n))` for `n = 1..N` (indices are
/// 1-based in the sums; element `[0]` is `n = 1`).
pub fn translation_components(series: &[f64], c: f64) -> (Vec<f64>, Vec<f64>) {
    let mut p = Vec::with_capacity(series.len());
    let mut s = Vec::with_capacity(series.len());
    let (mut pa, mut sa) = (0.0f64, 0.0f64);
    for (j, &phi) in series.iter().enumerate() {
        let (sin_jc, cos_jc) = ((j + 1) as f64 * c).sin_cos();
        pa += phi * cos_jc;
        sa += phi * sin_jc;
        p.push(pa);
        s.push(sa);
    }
    (p, s)
}

/// Sum of squared lag-`n` differences of `x`, i.e. `Σ_j (x[j+n] − x[j])²`
/// over the full overlap. Four independent accumulators keep the loop
/// vectorizable; this is the hot path of the whole sweep (O(N·cutoff)
/// per frequency).
fn lag_diff_sq_sum(x: &[f64], n: usize) -> f64 {
    let overlap = x.len() - n;
    let head = &x[..overlap];
    let tail = &x[n..];
    let mut acc = [0.0f64; 4];
    let hc = head.chunks_exact(4);
    let tc = tail.chunks_exact(4);
    for (h, t) in hc.clone().zip(tc.clone()) {
        for k in 0..4 {
            let d = t[k] - h[k];
            acc[k] += d * d;
        }
    }
    for (h, t) in hc.remainder().iter().zip(tc.remainder()) {
        let d = t - h;
        acc[0] += d * d;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3])
}

/// Modified mean-square displacement `D(n) = M(n) − V_osc(n)` for
/// `n = 1..cutoff`, where `M(n)` averages the squared walk displacement
/// over all admissible start points and `V_osc` is the bounded
/// oscillation carried by the series mean at frequency `c`.
pub fn mean_square_displacement(
    p: &[f64],
    s: &[f64],
    series: &[f64],
    c: f64,
    cutoff: usize,
) -> Result<Vec<f64>, ChaosError> {
    if p.len() != s.len() || p.len() != series.len() {
        return Err(ChaosError::LengthMismatch {
            p: p.len(),
            s: s.len(),
            series: series.len(),
        });
    }
    let len = series.len();
    if cutoff == 0 || cutoff >= len {
        return Err(ChaosError::BadCutoff { cutoff, len });
    }
    let mean = series.iter().sum::<f64>() / len as f64;
    let osc_coef = mean * mean / (1.0 - c.cos());
    let mut d = Vec::with_capacity(cutoff);
    for n in 1..=cutoff {
        let m = (lag_diff_sq_sum(p, n) + lag_diff_sq_sum(s, n)) / (len - n) as f64;
        d.push(m - osc_coef * (1.0 - (n as f64 * c).cos()));
    }
    Ok(d)
}

/// Pearson correlation of `D(n)` against the lag index `n = 1..cutoff`,
/// clamped to `[−1, 1]`. Zero variance in `D` — or a constant input
/// series, whose displacement is pure rounding residue — yields the
/// degenerate record `K_c = 0`.
pub fn k_for_c(series: &[f64], c: f64, cutoff: usize) -> Result<KcRecord, ChaosError> {
    let constant = series
        .iter()
        .all(|&v| v.to_bits() == series[0].to_bits());
    if constant {
        // D(n) would be M − V_osc ≡ 0 up to rounding; the correlation of
        // rounding residue is noise, not signal.
        if cutoff == 0 || cutoff >= series.len() {
            return Err(ChaosError::BadCutoff {
                cutoff,
                len: series.len(),
            });
        }
        return Ok(KcRecord {
            c,
            k: 0.0,
            degenerate: true,
        });
    }
    let (p, s) = translation_components(series, c);
    let d = mean_square_displacement(&p, &s, series, c, cutoff)?;

    let nf = d.len() as f64;
    let mean_x = (nf + 1.0) / 2.0; // mean of 1..cutoff
    let mean_y = d.iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx, mut syy) = (0.0f64, 0.0f64, 0.0f64);
    for (i, &y) in d.iter().enumerate() {
        let dx = (i + 1) as f64 - mean_x;
        let dy = y - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if syy == 0.0 || sxx == 0.0 {
        return Ok(KcRecord {
            c,
            k: 0.0,
            degenerate: true,
        });
    }
    Ok(KcRecord {
        c,
        k: (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0),
        degenerate: false,
    })
}

/// Runs the full 0-1 test: draws `cfg.n_c` frequencies uniformly from the
/// band using a `ChaCha8` stream seeded by `cfg.rng_seed`, computes each
/// `K_c`, and reports the median together with the walk at the
/// most-representative frequency. Identical `(series, cfg)` gives an
/// identical result.
pub fn k_statistic(series: &[f64], cfg: &ChaosConfig) -> Result<ChaosResult, ChaosError> {
    cfg.validate()?;
    if let Some(i) = series.iter().position(|v| !v.is_finite()) {
        return Err(ChaosError::NonFinite(i));
    }
    let cutoff = (series.len() as f64 * cfg.msd_cutoff_fraction).floor() as usize;
    if cutoff < 2 {
        let min = (2.0 / cfg.msd_cutoff_fraction).ceil() as usize;
        return Err(ChaosError::SeriesTooShort {
            len: series.len(),
            min,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let freqs: Vec<f64> = (0..cfg.n_c)
        .map(|_| rng.random_range(cfg.c_min..cfg.c_max))
        .collect();
    let k_per_c = freqs
        .iter()
        .map(|&c| k_for_c(series, c, cutoff))
        .collect::<Result<Vec<_>, _>>()?;

    let mut sorted: Vec<f64> = k_per_c.iter().map(|r| r.k).collect();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let k_median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    };

    let sample_c = k_per_c
        .iter()
        .min_by(|a, b| (a.k - k_median).abs().total_cmp(&(b.k - k_median).abs()))
        .expect("n_c >= 1 guarantees at least one record")
        .c;
    let (sample_p, sample_s) = translation_components(series, sample_c);

    Ok(ChaosResult {
        k_median,
        k_per_c,
        sample_c,
        sample_p,
        sample_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn splitmix_noise(n: usize, mut seed: u64) -> Vec<f64> {
        // Deterministic uniform(0,1) noise; good enough to calibrate the
        // diffusive branch of the test.
        (0..n)
            .map(|_| {
                seed = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
                let mut z = seed;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                z ^= z >> 31;
                (z >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect()
    }

    #[test]
    fn translation_walk_hand_example() {
        // Unit series at c = π/2: cos cycle 0,−1,0,1; sin cycle 1,0,−1,0.
        let (p, s) = translation_components(&[1.0; 4], PI / 2.0);
        for (got, want) in p.iter().zip([0.0, -1.0, -1.0, 0.0]) {
            assert!((got - want).abs() < 1e-12, "p = {p:?}");
        }
        for (got, want) in s.iter().zip([1.0, 1.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-12, "s = {s:?}");
        }
    }

    #[test]
    fn constant_series_is_degenerate() {
        let series = vec![2.5; 200];
        let rec = k_for_c(&series, 1.3, 20).unwrap();
        assert!(rec.degenerate);
        assert_eq!(rec.k, 0.0);
        let res = k_statistic(&series, &ChaosConfig::default()).unwrap();
        assert_eq!(res.k_median, 0.0);
        assert!(res.k_per_c.iter().all(|r| r.degenerate));
    }

    #[test]
    fn oscillation_term_cancels_constant_walk() {
        // For constant φ the raw MSD equals V_osc exactly in closed form,
        // so the modified displacement is rounding residue only.
        let series = vec![1.0; 300];
        let (p, s) = translation_components(&series, 0.9);
        let d = mean_square_displacement(&p, &s, &series, 0.9, 30).unwrap();
        assert!(d.iter().all(|v| v.abs() < 1e-9), "max {:?}", d.iter().fold(0.0f64, |a, &b| a.max(b.abs())));
    }

    #[test]
    fn noise_scores_near_one() {
        let series = splitmix_noise(2000, 7);
        let cfg = ChaosConfig {
            n_c: 21,
            rng_seed: 3,
            ..ChaosConfig::default()
        };
        let res = k_statistic(&series, &cfg).unwrap();
        assert!(res.k_median > 0.9, "K = {}", res.k_median);
    }

    #[test]
    fn periodic_series_scores_near_zero() {
        let series: Vec<f64> = (0..2000).map(|j| (2.0 * PI * j as f64 / 7.0).sin()).collect();
        let cfg = ChaosConfig {
            n_c: 21,
            rng_seed: 11,
            ..ChaosConfig::default()
        };
        let res = k_statistic(&series, &cfg).unwrap();
        assert!(res.k_median.abs() < 0.2, "K = {}", res.k_median);
    }

    #[test]
    fn determinism_under_fixed_seed() {
        let series = splitmix_noise(600, 42);
        let cfg = ChaosConfig {
            n_c: 9,
            rng_seed: 1234,
            ..ChaosConfig::default()
        };
        let a = k_statistic(&series, &cfg).unwrap();
        let b = k_statistic(&series, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn median_of_even_count_averages_central_pair() {
        // Two frequencies: median must be the mean of both K_c values.
        let series = splitmix_noise(400, 5);
        let cfg = ChaosConfig {
            n_c: 2,
            rng_seed: 8,
            ..ChaosConfig::default()
        };
        let res = k_statistic(&series, &cfg).unwrap();
        let mean = 0.5 * (res.k_per_c[0].k + res.k_per_c[1].k);
        assert!((res.k_median - mean).abs() < 1e-15);
    }

    #[test]
    fn sample_walk_matches_reported_frequency() {
        let series = splitmix_noise(400, 9);
        let res = k_statistic(&series, &ChaosConfig { n_c: 5, ..ChaosConfig::default() }).unwrap();
        let (p, s) = translation_components(&series, res.sample_c);
        assert_eq!(p, res.sample_p);
        assert_eq!(s, res.sample_s);
        assert!(res.k_per_c.iter().any(|r| r.c == res.sample_c));
    }

    #[test]
    fn rejects_bad_inputs() {
        let series = splitmix_noise(100, 1);
        let short = k_statistic(&series[..5], &ChaosConfig::default());
        assert!(matches!(short, Err(ChaosError::SeriesTooShort { .. })));

        let mut with_nan = series.clone();
        with_nan[17] = f64::NAN;
        assert_eq!(
            k_statistic(&with_nan, &ChaosConfig::default()),
            Err(ChaosError::NonFinite(17))
        );

        let bad_band = ChaosConfig { c_min: 2.0, c_max: 1.0, ..ChaosConfig::default() };
        assert!(matches!(
            k_statistic(&series, &bad_band),
            Err(ChaosError::BadBand { .. })
        ));

        let bad_frac = ChaosConfig { msd_cutoff_fraction: 0.9, ..ChaosConfig::default() };
        assert!(matches!(
            k_statistic(&series, &bad_frac),
            Err(ChaosError::BadFraction(_))
        ));

        assert!(matches!(
            k_for_c(&series, 1.0, 100),
            Err(ChaosError::BadCutoff { .. })
        ));
    }

    #[test]
    fn drawn_frequencies_stay_in_band() {
        let series = splitmix_noise(300, 2);
        let cfg = ChaosConfig { n_c: 40, rng_seed: 77, ..ChaosConfig::default() };
        let res = k_statistic(&series, &cfg).unwrap();
        assert_eq!(res.k_per_c.len(), 40);
        assert!(res
            .k_per_c
            .iter()
            .all(|r| r.c > cfg.c_min && r.c < cfg.c_max));
    }
}
