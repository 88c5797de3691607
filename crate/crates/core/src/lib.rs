//! Long-memory discrete dynamics on the Cournot duopoly.
//!
//! The model is a two-firm quantity-adjustment game whose state update is a
//! fractional-order (Caputo-like delta) difference: every step feeds on the
//! *entire* history of past adjustments through a slowly decaying Gamma-ratio
//! kernel, so the memory parameter `ν ∈ (0,1]` interpolates between strong
//! long memory (small ν) and the classical one-step map (ν = 1).
//!
//! Crate layout:
//!
//! - [`frac`] — memory-kernel weights and the history-sum integrator for
//!   arbitrary autonomous maps; everything else builds on this.
//! - [`cournot`] — the duopoly model: demand, profit, the adjustment
//!   right-hand side, the four Nash equilibria, and Jacobian closed forms.
//! - [`stability`] — per-eigenvalue stability region for fractional
//!   difference systems and the 2-D trace/determinant classification.
//! - [`chaos01`] — the 0-1 test for chaos (translation components,
//!   mean-square displacement, median correlation statistic K).
//! - [`sweep`] — bifurcation/K sweeps over ν and single-run drivers.
//! - [`config`], [`csvio`], [`svg`] — experiment configuration and the
//!   CSV/SVG output layer shared with the CLI binary.

pub mod chaos01;
pub mod config;
pub mod cournot;
pub mod csvio;
pub mod frac;
pub mod stability;
pub mod svg;
pub mod sweep;

pub use chaos01::{ChaosConfig, ChaosResult, KcRecord};
pub use cournot::{DuopolyParams, EquilibriumSet, Firm, JacobianSummary};
pub use frac::{FracOrder, MapFn, MemoryWeights, Trajectory};
pub use stability::{StabilityBranch, StabilityVerdict};
pub use sweep::{SweepConfig, SweepRow};
