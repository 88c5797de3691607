//! Exercises the C ABI through the same entry points a C caller would
//! use: handle lifecycles, buffer protocols, null and validation
//! contracts, and agreement with the underlying engine's benchmark
//! values.

use std::ptr;

use fracournot_ffi::*;

const E4: (f64, f64) = (0.48360505587103864, 0.47261403187396966);

unsafe fn bench_params() -> *mut FrcParams {
    let mut p = ptr::null_mut();
    let st = frc_params_new(0.45, 0.12, 6.0, 4.1, 0.2, 0.3, &mut p);
    assert_eq!(st, FrcStatus::Ok);
    assert!(!p.is_null());
    p
}

#[test]
fn params_lifecycle_and_equilibria() {
    unsafe {
        let p = bench_params();

        let mut pts = [0.0f64; 8];
        assert_eq!(frc_equilibria(p, pts.as_mut_ptr()), FrcStatus::Ok);
        assert_eq!(&pts[..2], &[0.0, 0.0]); // E1 is the origin
        assert!((pts[6] - E4.0).abs() < 5e-5, "E4 q1 = {}", pts[6]);
        assert!((pts[7] - E4.1).abs() < 5e-5, "E4 q2 = {}", pts[7]);

        let (mut tr, mut det) = (0.0, 0.0);
        assert_eq!(frc_tr_det_e4(p, &mut tr, &mut det), FrcStatus::Ok);
        assert!((tr - -2.3100934237039747).abs() < 1e-10);
        assert!((det - 0.673758563839531).abs() < 1e-10);

        let mut threshold = 0.0;
        assert_eq!(frc_nu_threshold_e4(p, &mut threshold), FrcStatus::Ok);
        assert!((threshold - 0.9764962854793086).abs() < 1e-10);

        let mut stable = false;
        assert_eq!(frc_stable_at(p, 0.99, &mut stable), FrcStatus::Ok);
        assert!(stable);
        assert_eq!(frc_stable_at(p, 0.97, &mut stable), FrcStatus::Ok);
        assert!(!stable);
        // The region test has no ν = 1 form.
        assert_eq!(
            frc_stable_at(p, 1.0, &mut stable),
            FrcStatus::InvalidArgument
        );

        frc_params_free(p);
    }
}

#[test]
fn invalid_params_leave_null_handle() {
    unsafe {
        let mut p: *mut FrcParams = ptr::null_mut();
        let st = frc_params_new(0.45, 0.12, -6.0, 4.1, 0.2, 0.3, &mut p);
        assert_eq!(st, FrcStatus::InvalidArgument);
        assert!(p.is_null());
        frc_params_free(p); // null must be harmless
    }
}

#[test]
fn simulate_accessors_and_buffers() {
    unsafe {
        let p = bench_params();
        let mut t: *mut FrcTrajectory = ptr::null_mut();
        let st = frc_simulate(p, 0.99, 0.3, 0.3, 1000, 1e6, &mut t);
        assert_eq!(st, FrcStatus::Ok);

        let len = frc_trajectory_len(t);
        assert_eq!(len, 1001);
        assert_eq!(frc_trajectory_diverged_step(t), -1);

        let mut q1 = vec![0.0f64; len];
        assert_eq!(
            frc_trajectory_component(t, 0, q1.as_mut_ptr(), q1.len()),
            FrcStatus::Ok
        );
        assert!((q1[0] - 0.3).abs() < 1e-15);
        assert!((q1[len - 1] - E4.0).abs() < 1e-3, "settled q1 = {}", q1[len - 1]);

        // Component index and buffer size are enforced.
        assert_eq!(
            frc_trajectory_component(t, 2, q1.as_mut_ptr(), q1.len()),
            FrcStatus::InvalidArgument
        );
        let mut short = [0.0f64; 4];
        assert_eq!(
            frc_trajectory_component(t, 0, short.as_mut_ptr(), short.len()),
            FrcStatus::InvalidArgument
        );

        frc_trajectory_free(t);
        frc_params_free(p);
    }
}

#[test]
fn divergence_is_reported_as_data() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            frc_params_new(50.0, 50.0, 6.0, 4.1, 0.2, 0.3, &mut p),
            FrcStatus::Ok
        );
        let mut t = ptr::null_mut();
        assert_eq!(frc_simulate(p, 0.5, 0.3, 0.3, 200, 1e6, &mut t), FrcStatus::Ok);
        let step = frc_trajectory_diverged_step(t);
        assert!(step >= 0, "orbit should trip the guard, got {step}");
        assert!(frc_trajectory_len(t) <= step as usize + 1);
        frc_trajectory_free(t);
        frc_params_free(p);
    }
}

#[test]
fn chaos_k_flags_noise_and_rejects_bad_input() {
    unsafe {
        // Deterministic splitmix64-driven noise: diffusive, K near 1.
        let mut seed = 99u64;
        let series: Vec<f64> = (0..2000)
            .map(|_| {
                seed = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
                let mut z = seed;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                z ^= z >> 31;
                (z >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect();
        let mut k = 0.0;
        assert_eq!(
            frc_chaos_k(series.as_ptr(), series.len(), 25, 7, &mut k),
            FrcStatus::Ok
        );
        assert!(k > 0.9, "K = {k}");

        assert_eq!(
            frc_chaos_k(series.as_ptr(), 0, 25, 7, &mut k),
            FrcStatus::InvalidArgument
        );
        assert_eq!(
            frc_chaos_k(series.as_ptr(), series.len(), 0, 7, &mut k),
            FrcStatus::InvalidArgument
        );
        let with_nan = [1.0, f64::NAN, 2.0, 3.0];
        // Too-short *and* non-finite: both are InvalidArgument.
        assert_eq!(
            frc_chaos_k(with_nan.as_ptr(), with_nan.len(), 5, 7, &mut k),
            FrcStatus::InvalidArgument
        );
    }
}

#[test]
fn null_pointer_contracts() {
    unsafe {
        assert_eq!(
            frc_params_new(0.45, 0.12, 6.0, 4.1, 0.2, 0.3, ptr::null_mut()),
            FrcStatus::NullPointer
        );
        let mut buf = [0.0f64; 8];
        assert_eq!(
            frc_equilibria(ptr::null(), buf.as_mut_ptr()),
            FrcStatus::NullPointer
        );
        let p = bench_params();
        assert_eq!(frc_equilibria(p, ptr::null_mut()), FrcStatus::NullPointer);
        assert_eq!(
            frc_tr_det_e4(p, ptr::null_mut(), ptr::null_mut()),
            FrcStatus::NullPointer
        );
        assert_eq!(
            frc_simulate(p, 0.5, 0.3, 0.3, 10, 1e6, ptr::null_mut()),
            FrcStatus::NullPointer
        );
        assert_eq!(frc_trajectory_len(ptr::null()), 0);
        assert_eq!(frc_trajectory_diverged_step(ptr::null()), -1);
        assert_eq!(
            frc_trajectory_component(ptr::null(), 0, buf.as_mut_ptr(), buf.len()),
            FrcStatus::NullPointer
        );
        let mut k = 0.0;
        assert_eq!(
            frc_chaos_k(ptr::null(), 10, 5, 0, &mut k),
            FrcStatus::NullPointer
        );
        frc_trajectory_free(ptr::null_mut());
        frc_params_free(p);
    }
}

#[test]
fn committed_header_is_current() {
    // The build script regenerates include/fracournot.h before tests run;
    // a drifting committed header would show up as a diff in review, and
    // this test pins the surface the header must carry.
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/fracournot.h"
    ))
    .expect("generated header exists");
    for symbol in [
        "FrcStatus",
        "FRC_STATUS_INVALID_ARGUMENT",
        "struct FrcParams FrcParams",
        "struct FrcTrajectory FrcTrajectory",
        "frc_params_new",
        "frc_params_free",
        "frc_equilibria",
        "frc_tr_det_e4",
        "frc_nu_threshold_e4",
        "frc_stable_at",
        "frc_simulate",
        "frc_trajectory_len",
        "frc_trajectory_diverged_step",
        "frc_trajectory_component",
        "frc_trajectory_free",
        "frc_chaos_k",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
