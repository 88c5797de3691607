//! Experiment configuration: a flat, human-readable key-value file with
//! dotted section keys (`model.b = 6.0`), parsed as TOML, with every key
//! optional and defaulting to the benchmark duopoly setup.
//!
//! Rendering is hand-rolled back to the same flat dotted style with
//! shortest round-trip float formatting, so `parse(render(cfg)) == cfg`
//! exactly — configs can be regenerated, diffed, and checked in.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::chaos01::ChaosConfig;
use crate::cournot::{DuopolyParams, ModelError};
use crate::frac::{FracError, FracOrder};
use crate::sweep::SweepConfig;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("could not read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
}

/// Demand intercept/slope and per-firm adjustment speeds and cost slopes.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub alpha1: f64,
    pub alpha2: f64,
    pub b: f64,
    pub d: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        ModelSection {
            alpha1: 0.45,
            alpha2: 0.12,
            b: 6.0,
            d: 4.1,
            c1: 0.2,
            c2: 0.3,
        }
    }
}

/// Single-trajectory settings shared by `simulate`, `chaos`, and the
/// sweep driver (which reuses `transient`, `x0`, and `guard`).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub nu: f64,
    pub x0: [f64; 2],
    pub steps: usize,
    pub transient: usize,
    pub guard: f64,
    /// Use compensated accumulation in the memory sum.
    pub compensated: bool,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            nu: 0.99,
            x0: [0.3, 0.3],
            steps: 1000,
            transient: 500,
            guard: 1e6,
            compensated: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChaosSection {
    pub n_c: usize,
    pub c_min: f64,
    pub c_max: f64,
    pub cutoff_fraction: f64,
    pub seed: u64,
}

impl Default for ChaosSection {
    fn default() -> Self {
        let d = ChaosConfig::default();
        ChaosSection {
            n_c: d.n_c,
            c_min: d.c_min,
            c_max: d.c_max,
            cutoff_fraction: d.msd_cutoff_fraction,
            seed: d.rng_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub nu_start: f64,
    pub nu_end: f64,
    pub nu_step: f64,
    pub bif_keep: usize,
    pub k_points: usize,
    pub workers: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            nu_start: 0.002,
            nu_end: 0.998,
            nu_step: 0.002,
            bif_keep: 100,
            k_points: 3000,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: String,
    pub svg: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: "out".to_string(),
            svg: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSection,
    pub run: RunSection,
    pub chaos: ChaosSection,
    pub sweep: SweepSection,
    pub output: OutputSection,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Renders the flat dotted-key form. Floats use shortest round-trip
    /// formatting so the output parses back to bit-identical values.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let f = |out: &mut String, key: &str, v: f64| {
            let _ = writeln!(out, "{key} = {v:?}");
        };
        let u = |out: &mut String, key: &str, v: u64| {
            let _ = writeln!(out, "{key} = {v}");
        };

        f(&mut out, "model.alpha1", self.model.alpha1);
        f(&mut out, "model.alpha2", self.model.alpha2);
        f(&mut out, "model.b", self.model.b);
        f(&mut out, "model.d", self.model.d);
        f(&mut out, "model.c1", self.model.c1);
        f(&mut out, "model.c2", self.model.c2);

        f(&mut out, "run.nu", self.run.nu);
        let _ = writeln!(
            out,
            "run.x0 = [{:?}, {:?}]",
            self.run.x0[0], self.run.x0[1]
        );
        u(&mut out, "run.steps", self.run.steps as u64);
        u(&mut out, "run.transient", self.run.transient as u64);
        f(&mut out, "run.guard", self.run.guard);
        let _ = writeln!(out, "run.compensated = {}", self.run.compensated);

        u(&mut out, "chaos.n_c", self.chaos.n_c as u64);
        f(&mut out, "chaos.c_min", self.chaos.c_min);
        f(&mut out, "chaos.c_max", self.chaos.c_max);
        f(&mut out, "chaos.cutoff_fraction", self.chaos.cutoff_fraction);
        u(&mut out, "chaos.seed", self.chaos.seed);

        f(&mut out, "sweep.nu_start", self.sweep.nu_start);
        f(&mut out, "sweep.nu_end", self.sweep.nu_end);
        f(&mut out, "sweep.nu_step", self.sweep.nu_step);
        u(&mut out, "sweep.bif_keep", self.sweep.bif_keep as u64);
        u(&mut out, "sweep.k_points", self.sweep.k_points as u64);
        u(&mut out, "sweep.workers", self.sweep.workers as u64);

        let _ = writeln!(
            out,
            "output.dir = {}",
            toml::Value::String(self.output.dir.clone())
        );
        let _ = writeln!(out, "output.svg = {}", self.output.svg);
        out
    }

    pub fn params(&self) -> Result<DuopolyParams, ModelError> {
        DuopolyParams::new(
            self.model.alpha1,
            self.model.alpha2,
            self.model.b,
            self.model.d,
            self.model.c1,
            self.model.c2,
        )
    }

    pub fn frac_order(&self) -> Result<FracOrder, FracError> {
        FracOrder::new(self.run.nu)
    }

    pub fn chaos_config(&self) -> ChaosConfig {
        ChaosConfig {
            n_c: self.chaos.n_c,
            c_min: self.chaos.c_min,
            c_max: self.chaos.c_max,
            msd_cutoff_fraction: self.chaos.cutoff_fraction,
            rng_seed: self.chaos.seed,
        }
    }

    /// Assembles the sweep driver's config; the trajectory-level knobs
    /// (`x0`, `transient`, `guard`) come from the run section.
    pub fn sweep_config(&self) -> Result<SweepConfig, ModelError> {
        Ok(SweepConfig {
            nu_start: self.sweep.nu_start,
            nu_end: self.sweep.nu_end,
            nu_step: self.sweep.nu_step,
            transient: self.run.transient,
            bif_keep: self.sweep.bif_keep,
            k_points: self.sweep.k_points,
            params: self.params()?,
            x0: self.run.x0,
            chaos: self.chaos_config(),
            guard: self.run.guard,
            workers: self.sweep.workers,
        })
    }
}
