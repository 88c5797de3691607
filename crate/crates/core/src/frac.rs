//! Memory-kernel weights and the fractional-difference integrator.
//!
//! A ν-order Caputo-like delta difference equation `Δ^ν x = f(x)` is
//! equivalent to the explicit history sum
//!
//! ```text
//! x(n) = x(0) + Σ_{i=1..n} w[n−i] · f(x(i−1)),
//! w[j] = Γ(j+ν) / (Γ(ν) · Γ(j+1))
//! ```
//!
//! so the state at step `n` is the initial condition plus a weighted sum of
//! *all* past right-hand-side evaluations. The weights decay like `j^(ν−1)`:
//! at ν = 1 they are all exactly 1 and the recursion collapses to the
//! classical map `x(n+1) = x(n) + f(x(n))`; for ν < 1 old increments never
//! stop contributing (long memory).
//!
//! Weights are generated by the ratio recurrence `w[j] = w[j−1]·(j−1+ν)/j`,
//! never by evaluating Γ directly — Γ(n+ν) overflows `f64` past n ≈ 170
//! while the ratio stays O(1).

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FracError {
    #[error("memory order nu must lie in (0, 1], got {0}")]
    InvalidOrder(f64),
    #[error("integration requires at least one step")]
    ZeroSteps,
    #[error("divergence guard must be positive and finite, got {0}")]
    InvalidGuard(f64),
    #[error("initial state has dimension {got}, map expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// The memory order ν, validated to (0, 1].
///
/// ν = 1 is admitted as the classical-map degeneration; the open lower end
/// keeps the kernel weights finite and positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(nu: f64) -> Result<Self, FracError> {
        if nu.is_finite() && nu > 0.0 && nu <= 1.0 {
            Ok(Self(nu))
        } else {
            Err(FracError::InvalidOrder(nu))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True for the ν = 1 classical-map degeneration.
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

/// Kernel weights `w[j] = Γ(j+ν)/(Γ(ν)Γ(j+1))` for `j = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct MemoryWeights {
    nu: FracOrder,
    coeffs: Vec<f64>,
}

impl MemoryWeights {
    pub fn nu(&self) -> FracOrder {
        self.nu
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Generates kernel weights by the overflow-free ratio recurrence
/// `w[0] = 1, w[j] = w[j−1]·(j−1+ν)/j`.
pub fn memory_weights(nu: FracOrder, n_max: usize) -> MemoryWeights {
    let v = nu.value();
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(1.0);
    for j in 1..=n_max {
        let prev = coeffs[j - 1];
        coeffs.push(prev * ((j as f64 - 1.0 + v) / j as f64));
    }
    MemoryWeights { nu, coeffs }
}

/// An autonomous map `f: R^dim -> R^dim`, the right-hand side of the
/// difference equation. Implementations must be deterministic.
pub trait MapFn: Sync {
    fn dim(&self) -> usize;
    /// Writes `f(x)` into `out`; both slices have length `dim()`.
    fn eval(&self, x: &[f64], out: &mut [f64]);
}

/// Adapter turning a closure into a [`MapFn`] of a given dimension.
pub struct FnMap<F: Fn(&[f64], &mut [f64]) + Sync> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64]) + Sync> FnMap<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64], &mut [f64]) + Sync> MapFn for FnMap<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }
}

/// A computed orbit: states `x(0..=N)` stored flat, plus divergence
/// bookkeeping. When `diverged_at = Some(n)`, the orbit stops at step `n`
/// (the offending state is stored; every state before it is finite).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    nu: FracOrder,
    dim: usize,
    states: Vec<f64>,
    diverged_at: Option<usize>,
}

impl Trajectory {
    pub fn nu(&self) -> FracOrder {
        self.nu
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored states, including the initial condition.
    pub fn len(&self) -> usize {
        self.states.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// State vector at step `n` (0 = initial condition).
    pub fn state(&self, n: usize) -> &[f64] {
        &self.states[n * self.dim..(n + 1) * self.dim]
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    pub fn states(&self) -> impl Iterator<Item = &[f64]> {
        self.states.chunks_exact(self.dim)
    }

    /// One coordinate of every stored state, in step order.
    pub fn component(&self, k: usize) -> Vec<f64> {
        assert!(k < self.dim, "component index out of range");
        self.states.iter().skip(k).step_by(self.dim).copied().collect()
    }

    pub fn diverged_at(&self) -> Option<usize> {
        self.diverged_at
    }

    pub fn is_diverged(&self) -> bool {
        self.diverged_at.is_some()
    }
}

/// Integrates `Δ^ν x = f(x)` for `n_steps` steps from `x0` via the explicit
/// history sum. Each state is the full weighted convolution of the stored
/// right-hand-side history, accumulated oldest-to-newest in plain `f64`.
///
/// The orbit stops early when any component's magnitude exceeds `guard`
/// (or goes non-finite); this is recorded on the trajectory, not an error.
pub fn integrate(
    f: &dyn MapFn,
    nu: FracOrder,
    x0: &[f64],
    n_steps: usize,
    guard: f64,
) -> Result<Trajectory, FracError> {
    integrate_impl(f, nu, x0, n_steps, guard, false)
}

/// [`integrate`] with Neumaier-compensated accumulation of the memory sum,
/// for reproducibility studies of the plain summation order. Same contract.
pub fn integrate_compensated(
    f: &dyn MapFn,
    nu: FracOrder,
    x0: &[f64],
    n_steps: usize,
    guard: f64,
) -> Result<Trajectory, FracError> {
    integrate_impl(f, nu, x0, n_steps, guard, true)
}

fn integrate_impl(
    f: &dyn MapFn,
    nu: FracOrder,
    x0: &[f64],
    n_steps: usize,
    guard: f64,
    compensated: bool,
) -> Result<Trajectory, FracError> {
    if n_steps == 0 {
        return Err(FracError::ZeroSteps);
    }
    if !(guard > 0.0 && guard.is_finite()) {
        return Err(FracError::InvalidGuard(guard));
    }
    let dim = f.dim();
    if x0.len() != dim {
        return Err(FracError::DimensionMismatch { expected: dim, got: x0.len() });
    }

    let weights = memory_weights(nu, n_steps - 1);
    let w = weights.coeffs();
    let mut states = Vec::with_capacity((n_steps + 1) * dim);
    states.extend_from_slice(x0);
    // f(x(i-1)) history, flat like `states`, filled one step ahead of use.
    let mut fhist = vec![0.0f64; n_steps * dim];
    let mut fx = vec![0.0f64; dim];
    let mut acc = vec![0.0f64; dim];
    let mut comp = vec![0.0f64; dim];
    let mut diverged_at = None;

    for n in 1..=n_steps {
        let prev = &states[(n - 1) * dim..n * dim];
        f.eval(prev, &mut fx);
        fhist[(n - 1) * dim..n * dim].copy_from_slice(&fx);

        // x(n) = x0 + Σ_{i=1..n} w[n−i]·f(x(i−1)): the reversed weight
        // prefix pairs w[n−1] with the oldest stored f and w[0] with the
        // newest, so iteration runs oldest-to-newest.
        acc.fill(0.0);
        comp.fill(0.0);
        if compensated {
            for (wj, fv) in w[..n].iter().rev().zip(fhist.chunks_exact(dim)) {
                for k in 0..dim {
                    let term = wj * fv[k];
                    let sum = acc[k] + term;
                    comp[k] += if acc[k].abs() >= term.abs() {
                        (acc[k] - sum) + term
                    } else {
                        (term - sum) + acc[k]
                    };
                    acc[k] = sum;
                }
            }
            for k in 0..dim {
                acc[k] += comp[k];
            }
        } else if dim == 2 {
            // The duopoly hot path: keep both accumulators in registers.
            let (mut a0, mut a1) = (0.0f64, 0.0f64);
            for (wj, fv) in w[..n].iter().rev().zip(fhist.chunks_exact(2)) {
                a0 += wj * fv[0];
                a1 += wj * fv[1];
            }
            acc[0] = a0;
            acc[1] = a1;
        } else {
            for (wj, fv) in w[..n].iter().rev().zip(fhist.chunks_exact(dim)) {
                for k in 0..dim {
                    acc[k] += wj * fv[k];
                }
            }
        }

        let mut tripped = false;
        for k in 0..dim {
            let xk = x0[k] + acc[k];
            if !(xk.is_finite() && xk.abs() <= guard) {
                tripped = true;
            }
            states.push(xk);
        }
        if tripped {
            diverged_at = Some(n);
            break;
        }
    }

    Ok(Trajectory { nu, dim, states, diverged_at })
}
