//! C ABI over the long-memory duopoly engine.
//!
//! Conventions:
//! - Handles are opaque; constructors hand them back through an
//!   out-pointer and return a status code. `..._free` functions accept
//!   null harmlessly and must be called exactly once per handle.
//! - Buffers are caller-allocated; query lengths first.
//! - Validation failures return `InvalidArgument`, never a poisoned
//!   handle. Orbit divergence is data (see
//!   [`frc_trajectory_diverged_step`]), not an error.
//! - No entry point panics.
//!
//! The matching header is generated into `include/fracournot.h` by the
//! build script and committed alongside the source.

use std::ptr;

use fracournot::chaos01::{k_statistic, ChaosConfig};
use fracournot::cournot::DuopolyParams;
use fracournot::frac::{integrate, FracOrder, Trajectory};
use fracournot::stability::{classify_2d, nu_threshold_e4};

/// Result code shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
}

/// Opaque handle to a validated duopoly parameter set.
pub struct FrcParams(DuopolyParams);

/// Opaque handle to a computed orbit.
pub struct FrcTrajectory(Trajectory);

/// Creates a parameter handle; all six values must be positive and
/// finite. On failure `*out` is null.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn frc_params_new(
    alpha1: f64,
    alpha2: f64,
    b: f64,
    d: f64,
    c1: f64,
    c2: f64,
    out: *mut *mut FrcParams,
) -> FrcStatus {
    if out.is_null() {
        return FrcStatus::NullPointer;
    }
    match DuopolyParams::new(alpha1, alpha2, b, d, c1, c2) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(FrcParams(p)));
            FrcStatus::Ok
        }
        Err(_) => {
            *out = ptr::null_mut();
            FrcStatus::InvalidArgument
        }
    }
}

/// Releases a parameter handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from [`frc_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn frc_params_free(p: *mut FrcParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the four equilibria as (q1, q2) pairs — eight doubles in the
/// order E1, E2, E3, E4.
///
/// # Safety
/// `p` must be a live handle; `out` must point to at least 8 writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn frc_equilibria(p: *const FrcParams, out: *mut f64) -> FrcStatus {
    if p.is_null() || out.is_null() {
        return FrcStatus::NullPointer;
    }
    let eq = (*p).0.equilibria();
    let vals = [
        eq.e1[0], eq.e1[1], eq.e2[0], eq.e2[1], eq.e3[0], eq.e3[1], eq.e4[0], eq.e4[1],
    ];
    ptr::copy_nonoverlapping(vals.as_ptr(), out, vals.len());
    FrcStatus::Ok
}

/// Trace and determinant of the Jacobian at the interior equilibrium.
///
/// # Safety
/// `p` must be a live handle; `out_tr` and `out_det` must each point to
/// one writable double.
#[no_mangle]
pub unsafe extern "C" fn frc_tr_det_e4(
    p: *const FrcParams,
    out_tr: *mut f64,
    out_det: *mut f64,
) -> FrcStatus {
    if p.is_null() || out_tr.is_null() || out_det.is_null() {
        return FrcStatus::NullPointer;
    }
    let (tr, det) = (*p).0.tr_det_at_e4();
    *out_tr = tr;
    *out_det = det;
    FrcStatus::Ok
}

/// The critical memory order at E4: the orbit is locally stable there
/// for every ν above this value.
///
/// # Safety
/// `p` must be a live handle; `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn frc_nu_threshold_e4(p: *const FrcParams, out: *mut f64) -> FrcStatus {
    if p.is_null() || out.is_null() {
        return FrcStatus::NullPointer;
    }
    match nu_threshold_e4(&(*p).0) {
        Ok(t) => {
            *out = t;
            FrcStatus::Ok
        }
        Err(_) => FrcStatus::InvalidArgument,
    }
}

/// Stability verdict at E4 for memory order `nu` in (0,1); `nu = 1`
/// (classical) is rejected — use the unit-disk test there.
///
/// # Safety
/// `p` must be a live handle; `out_stable` must point to one writable
/// bool.
#[no_mangle]
pub unsafe extern "C" fn frc_stable_at(
    p: *const FrcParams,
    nu: f64,
    out_stable: *mut bool,
) -> FrcStatus {
    if p.is_null() || out_stable.is_null() {
        return FrcStatus::NullPointer;
    }
    let Ok(order) = FracOrder::new(nu) else {
        return FrcStatus::InvalidArgument;
    };
    let (tr, det) = (*p).0.tr_det_at_e4();
    match classify_2d(tr, det, order) {
        Ok(verdict) => {
            *out_stable = verdict.stable;
            FrcStatus::Ok
        }
        Err(_) => FrcStatus::InvalidArgument,
    }
}

/// Integrates the duopoly orbit for `steps` steps from `(q1_0, q2_0)` at
/// memory order `nu`, stopping early if any output magnitude exceeds
/// `guard`. On success `*out` owns the trajectory.
///
/// # Safety
/// `p` must be a live handle; `out` must point to writable storage for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn frc_simulate(
    p: *const FrcParams,
    nu: f64,
    q1_0: f64,
    q2_0: f64,
    steps: usize,
    guard: f64,
    out: *mut *mut FrcTrajectory,
) -> FrcStatus {
    if p.is_null() || out.is_null() {
        return FrcStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let Ok(order) = FracOrder::new(nu) else {
        return FrcStatus::InvalidArgument;
    };
    match integrate(&(*p).0, order, &[q1_0, q2_0], steps, guard) {
        Ok(traj) => {
            *out = Box::into_raw(Box::new(FrcTrajectory(traj)));
            FrcStatus::Ok
        }
        Err(_) => FrcStatus::InvalidArgument,
    }
}

/// Number of stored states (steps + 1 for a complete orbit; fewer after
/// a guard trip). Null yields 0.
///
/// # Safety
/// `t` must be null or a live trajectory handle.
#[no_mangle]
pub unsafe extern "C" fn frc_trajectory_len(t: *const FrcTrajectory) -> usize {
    if t.is_null() {
        0
    } else {
        (*t).0.len()
    }
}

/// Step index at which the orbit tripped the divergence guard, or -1 if
/// it completed (or `t` is null).
///
/// # Safety
/// `t` must be null or a live trajectory handle.
#[no_mangle]
pub unsafe extern "C" fn frc_trajectory_diverged_step(t: *const FrcTrajectory) -> i64 {
    if t.is_null() {
        return -1;
    }
    match (*t).0.diverged_at() {
        Some(step) => step as i64,
        None => -1,
    }
}

/// Copies one component's series (0 = q1, 1 = q2) into `buf`, which must
/// hold at least [`frc_trajectory_len`] doubles.
///
/// # Safety
/// `t` must be a live handle; `buf` must point to `buf_len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn frc_trajectory_component(
    t: *const FrcTrajectory,
    component: usize,
    buf: *mut f64,
    buf_len: usize,
) -> FrcStatus {
    if t.is_null() || buf.is_null() {
        return FrcStatus::NullPointer;
    }
    let traj = &(*t).0;
    if component >= traj.dim() || buf_len < traj.len() {
        return FrcStatus::InvalidArgument;
    }
    let series = traj.component(component);
    ptr::copy_nonoverlapping(series.as_ptr(), buf, series.len());
    FrcStatus::Ok
}

/// Releases a trajectory handle. Null is ignored.
///
/// # Safety
/// `t` must be null or a handle from [`frc_simulate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn frc_trajectory_free(t: *mut FrcTrajectory) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Runs the 0-1 chaos test on a scalar series with `n_c` random test
/// frequencies (band and displacement cutoff at their standard
/// defaults) and writes the median statistic: ≈1 diffusive/chaotic,
/// ≈0 regular. The series must be finite and long enough for the
/// displacement window (at least 20 points at the default cutoff).
///
/// # Safety
/// `series` must point to `len` readable doubles; `out_k` must point to
/// one writable double.
#[no_mangle]
pub unsafe extern "C" fn frc_chaos_k(
    series: *const f64,
    len: usize,
    n_c: usize,
    seed: u64,
    out_k: *mut f64,
) -> FrcStatus {
    if series.is_null() || out_k.is_null() {
        return FrcStatus::NullPointer;
    }
    if len == 0 {
        return FrcStatus::InvalidArgument;
    }
    let data = std::slice::from_raw_parts(series, len);
    let cfg = ChaosConfig {
        n_c,
        rng_seed: seed,
        ..ChaosConfig::default()
    };
    match k_statistic(data, &cfg) {
        Ok(res) => {
            *out_k = res.k_median;
            FrcStatus::Ok
        }
        Err(_) => FrcStatus::InvalidArgument,
    }
}
