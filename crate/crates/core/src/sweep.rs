//! Memory-order sweep driver: bifurcation sampling and the 0-1 statistic
//! across a ν grid.
//!
//! Each grid point integrates the duopoly map for `transient + k_points`
//! steps from a shared initial state, keeps the first `bif_keep`
//! post-transient q₁ samples for the bifurcation diagram, and feeds the
//! full post-transient q₁ series to the 0-1 test. Rows are independent
//! and run in parallel; assembly order is always ascending ν regardless
//! of scheduling.
//!
//! A trajectory tripping the divergence guard is data, not an error: the
//! row is marked `diverged`, keeps whatever pre-trip samples fell in the
//! bifurcation window, and carries no K value.

use rayon::prelude::*;
use thiserror::Error;

use crate::chaos01::{k_statistic, ChaosConfig, ChaosError, ChaosResult};
use crate::cournot::DuopolyParams;
use crate::frac::{integrate, FracError, FracOrder, Trajectory};

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("sweep grid start={start} end={end} step={step} is invalid: need 0 < start <= end < 1 and step > 0")]
    BadGrid { start: f64, end: f64, step: f64 },
    #[error("bif_keep ({bif_keep}) cannot exceed k_points ({k_points})")]
    BadCounts { bif_keep: usize, k_points: usize },
    #[error("divergence guard {0} must be positive and finite")]
    BadGuard(f64),
    #[error("could not build the worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Frac(#[from] FracError),
    #[error(transparent)]
    Chaos(#[from] ChaosError),
}

/// Full description of one sweep run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// First ν on the grid, in (0,1).
    pub nu_start: f64,
    /// Last ν reachable by the grid, in (0,1), `>= nu_start`.
    pub nu_end: f64,
    /// Grid increment.
    pub nu_step: f64,
    /// Steps dropped before sampling.
    pub transient: usize,
    /// Post-transient q₁ samples kept for the bifurcation diagram.
    pub bif_keep: usize,
    /// Post-transient q₁ samples fed to the 0-1 test; also fixes the
    /// per-row step count (`transient + k_points`).
    pub k_points: usize,
    pub params: DuopolyParams,
    pub x0: [f64; 2],
    /// Per-row 0-1 test settings; `rng_seed` acts as the sweep master
    /// seed, each row deriving its own stream from it.
    pub chaos: ChaosConfig,
    /// Trajectory magnitude guard passed to the integrator.
    pub guard: f64,
    /// Worker threads; 0 means "one per available core".
    pub workers: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        let grid_ok = self.nu_start > 0.0
            && self.nu_start <= self.nu_end
            && self.nu_end < 1.0
            && self.nu_step > 0.0
            && self.nu_step.is_finite();
        if !grid_ok {
            return Err(SweepError::BadGrid {
                start: self.nu_start,
                end: self.nu_end,
                step: self.nu_step,
            });
        }
        if self.bif_keep > self.k_points {
            return Err(SweepError::BadCounts {
                bif_keep: self.bif_keep,
                k_points: self.k_points,
            });
        }
        if !(self.guard > 0.0 && self.guard.is_finite()) {
            return Err(SweepError::BadGuard(self.guard));
        }
        self.chaos.validate()?;
        // Reject k_points too short for the 0-1 test up front: mid-sweep
        // that would be a config failure, not row data.
        let cutoff = (self.k_points as f64 * self.chaos.msd_cutoff_fraction).floor() as usize;
        if cutoff < 2 {
            return Err(SweepError::Chaos(ChaosError::SeriesTooShort {
                len: self.k_points,
                min: (2.0 / self.chaos.msd_cutoff_fraction).ceil() as usize,
            }));
        }
        Ok(())
    }

    /// The ν grid, built by index arithmetic (`ν_i = start + i·step`) so
    /// values carry no accumulated drift and are reproducible to 1e-12.
    pub fn grid(&self) -> Vec<f64> {
        let count = ((self.nu_end - self.nu_start) / self.nu_step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.nu_start + i as f64 * self.nu_step)
            .collect()
    }

    /// Steps integrated per row.
    pub fn total_steps(&self) -> usize {
        self.transient + self.k_points
    }
}

/// One grid point's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub nu: f64,
    /// Post-transient q₁ samples (truncated if the orbit diverged inside
    /// the window).
    pub bif_values: Vec<f64>,
    /// Median 0-1 statistic; absent when the orbit diverged.
    pub k: Option<f64>,
    pub diverged: bool,
}

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-row RNG seed: a splitmix64 hash of the master seed and the row
/// index, so adding or removing rows never shifts another row's stream.
fn row_seed(master: u64, index: usize) -> u64 {
    splitmix64(master ^ splitmix64((index as u64).wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

fn sweep_row(cfg: &SweepConfig, index: usize, nu_val: f64) -> Result<SweepRow, SweepError> {
    let nu = FracOrder::new(nu_val)?;
    let traj = integrate(&cfg.params, nu, &cfg.x0, cfg.total_steps(), cfg.guard)?;
    let q1 = traj.component(0);
    let first = cfg.transient + 1; // index of the first post-transient state

    if let Some(trip) = traj.diverged_at() {
        let bif_values = if trip > first {
            q1[first..trip.min(first + cfg.bif_keep)].to_vec()
        } else {
            Vec::new()
        };
        return Ok(SweepRow {
            nu: nu_val,
            bif_values,
            k: None,
            diverged: true,
        });
    }

    let mut chaos = cfg.chaos.clone();
    chaos.rng_seed = row_seed(cfg.chaos.rng_seed, index);
    let k = k_statistic(&q1[first..], &chaos)?.k_median;
    Ok(SweepRow {
        nu: nu_val,
        bif_values: q1[first..first + cfg.bif_keep].to_vec(),
        k: Some(k),
        diverged: false,
    })
}

/// Runs every grid row, in parallel when the pool allows it, and returns
/// the rows in ascending-ν order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, SweepError> {
    cfg.validate()?;
    let grid = cfg.grid();
    let work = || {
        grid.par_iter()
            .enumerate()
            .map(|(i, &nu)| sweep_row(cfg, i, nu))
            .collect::<Result<Vec<_>, _>>()
    };
    if cfg.workers == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| SweepError::Pool(e.to_string()))?;
        pool.install(work)
    }
}

/// One full trajectory at a single ν, plus the 0-1 result on its
/// post-transient q₁ series (absent when the orbit diverged). Uses the
/// configured chaos seed directly — no per-row derivation.
pub fn run_single(
    nu: FracOrder,
    cfg: &SweepConfig,
) -> Result<(Trajectory, Option<ChaosResult>), SweepError> {
    cfg.validate()?;
    let traj = integrate(&cfg.params, nu, &cfg.x0, cfg.total_steps(), cfg.guard)?;
    let chaos = if traj.is_diverged() {
        None
    } else {
        let q1 = traj.component(0);
        Some(k_statistic(&q1[cfg.transient + 1..], &cfg.chaos)?)
    };
    Ok((traj, chaos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench_cfg() -> SweepConfig {
        SweepConfig {
            nu_start: 0.5,
            nu_end: 0.5,
            nu_step: 0.002,
            transient: 50,
            bif_keep: 10,
            k_points: 100,
            params: DuopolyParams::new(0.45, 0.12, 6.0, 4.1, 0.2, 0.3).unwrap(),
            x0: [0.3, 0.3],
            chaos: ChaosConfig {
                n_c: 9,
                rng_seed: 4242,
                ..ChaosConfig::default()
            },
            guard: 1e6,
            workers: 1,
        }
    }

    #[test]
    fn grid_count_matches_closed_form() {
        let mut cfg = bench_cfg();
        cfg.nu_start = 0.002;
        cfg.nu_end = 0.998;
        cfg.nu_step = 0.002;
        let grid = cfg.grid();
        assert_eq!(grid.len(), 499);
        assert!((grid[0] - 0.002).abs() < 1e-15);
        assert!((grid[498] - 0.998).abs() < 1e-12);

        cfg.nu_start = 0.1;
        cfg.nu_end = 0.9;
        cfg.nu_step = 0.2;
        let grid = cfg.grid();
        assert_eq!(grid.len(), 5);
        for (g, want) in grid.iter().zip([0.1, 0.3, 0.5, 0.7, 0.9]) {
            assert!((g - want).abs() < 1e-12);
        }
    }

    #[test]
    fn config_rejections() {
        let mut cfg = bench_cfg();
        cfg.nu_start = 0.0;
        assert!(matches!(cfg.validate(), Err(SweepError::BadGrid { .. })));

        let mut cfg = bench_cfg();
        cfg.nu_end = 1.0;
        assert!(matches!(cfg.validate(), Err(SweepError::BadGrid { .. })));

        let mut cfg = bench_cfg();
        cfg.nu_start = 0.7;
        cfg.nu_end = 0.3;
        assert!(matches!(cfg.validate(), Err(SweepError::BadGrid { .. })));

        let mut cfg = bench_cfg();
        cfg.nu_step = 0.0;
        assert!(matches!(cfg.validate(), Err(SweepError::BadGrid { .. })));

        let mut cfg = bench_cfg();
        cfg.bif_keep = 200;
        assert!(matches!(cfg.validate(), Err(SweepError::BadCounts { .. })));

        let mut cfg = bench_cfg();
        cfg.guard = f64::INFINITY;
        assert!(matches!(cfg.validate(), Err(SweepError::BadGuard(_))));

        let mut cfg = bench_cfg();
        cfg.k_points = 10;
        cfg.bif_keep = 5;
        assert!(matches!(
            cfg.validate(),
            Err(SweepError::Chaos(ChaosError::SeriesTooShort { .. }))
        ));
    }

    #[test]
    fn single_row_shape_and_determinism() {
        let cfg = bench_cfg();
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row.nu, 0.5);
        assert_eq!(row.bif_values.len(), 10);
        assert!(!row.diverged);
        assert!(row.k.is_some());
        assert_eq!(run_sweep(&cfg).unwrap(), rows);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut cfg = bench_cfg();
        cfg.nu_start = 0.3;
        cfg.nu_end = 0.9;
        cfg.nu_step = 0.2;
        cfg.workers = 1;
        let serial = run_sweep(&cfg).unwrap();
        cfg.workers = 4;
        let parallel = run_sweep(&cfg).unwrap();
        assert_eq!(serial, parallel);
        // Ascending-ν assembly.
        for pair in serial.windows(2) {
            assert!(pair[0].nu < pair[1].nu);
        }
    }

    #[test]
    fn divergent_row_is_data() {
        let mut cfg = bench_cfg();
        // Adjustment speeds far past any stability bound blow the orbit up.
        cfg.params = DuopolyParams::new(50.0, 50.0, 6.0, 4.1, 0.2, 0.3).unwrap();
        cfg.guard = 1e6;
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].diverged);
        assert_eq!(rows[0].k, None);
        // Orbit blows up long before the bifurcation window opens.
        assert!(rows[0].bif_values.is_empty());
    }

    #[test]
    fn run_single_returns_full_trajectory() {
        let cfg = bench_cfg();
        let nu = FracOrder::new(0.99).unwrap();
        let (traj, chaos) = run_single(nu, &cfg).unwrap();
        assert_eq!(traj.len(), cfg.total_steps() + 1); // includes x(0)
        let res = chaos.expect("non-divergent orbit carries a K result");
        assert!(res.k_median.abs() <= 1.0);
        assert_eq!(res.k_per_c.len(), 9);
    }

    #[test]
    fn row_seeds_are_stable_and_distinct() {
        let seeds: Vec<u64> = (0..6).map(|i| row_seed(7, i)).collect();
        let again: Vec<u64> = (0..6).map(|i| row_seed(7, i)).collect();
        assert_eq!(seeds, again);
        for i in 0..seeds.len() {
            for j in i + 1..seeds.len() {
                assert_ne!(seeds[i], seeds[j]);
            }
        }
        assert_ne!(row_seed(7, 0), row_seed(8, 0));
    }
}
