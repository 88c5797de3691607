//! Stability tests for fractional-order difference systems.
//!
//! For a linearization eigenvalue `λ` (written `z` below), the zero solution
//! of a ν-order difference system is asymptotically stable iff `z` lies in
//! the order-dependent region
//!
//! ```text
//! S_ν = { z : |z| < (2·cos((|arg z| − π)/(2 − ν)))^ν  and  |arg z| > νπ/2 }
//! ```
//!
//! with ν ∈ (0,1) strictly — at ν = 1 the region degenerates and the
//! classical unit-disk test applies instead, which this module deliberately
//! refuses to emulate (callers get a distinct error).
//!
//! For a 2-D system summarized by (tr J, det J), [`classify_2d`] picks the
//! branch: a pair of negative real eigenvalues reduces the region test to
//! the explicit threshold `ν > log₂((√ϖ − tr)/2)` with `ϖ = |tr² − 4 det|`;
//! a complex pair is routed through the general per-eigenvalue region test.
//! (A printed 2-D shortcut for the complex case exists in the literature
//! with an ambiguously defined κ; it is intentionally not hard-coded —
//! the parent eigenvalue test decides.)

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::cournot::DuopolyParams;
use crate::frac::FracOrder;

#[derive(Debug, Error, PartialEq)]
pub enum StabilityError {
    #[error("order nu={0} is outside (0,1): the fractional region test does not apply; use the classical unit-disk test")]
    ClassicalOrder(f64),
    #[error("det J = {0} violates the det J > 0 hypothesis of the 2-D classification")]
    DetOutOfHypothesis(f64),
    #[error("discriminant (tr J)^2 - 4 det J = {0} is negative: eigenvalues are complex, the real-branch threshold formula is inapplicable; use classify_2d")]
    ComplexEigenvalues(f64),
}

/// Which decision path produced a [`StabilityVerdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityBranch {
    /// Negative real eigenvalue pair: explicit ν-threshold.
    RealNegative,
    /// Complex conjugate pair, decided by the per-eigenvalue region test.
    Complex,
    /// Raw eigenvalues tested directly against the region.
    GeneralEigenvalue,
    /// Outside the classification's reach (e.g. positive real eigenvalues).
    Inconclusive,
}

/// One eigenvalue's region-membership record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCheck {
    pub lambda: Complex64,
    pub in_region: bool,
    /// Landed exactly on the region boundary (reported not-in-region:
    /// the region is open).
    pub boundary: bool,
    /// λ = 0: the linearization is degenerate there; stable by convention.
    pub degenerate_zero: bool,
}

/// Outcome of a 2-D stability classification.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub branch: StabilityBranch,
    /// Present on the real-negative branch: stable ⟺ ν > threshold.
    pub nu_threshold: Option<f64>,
    pub details: Vec<EigenCheck>,
}

/// Tests one eigenvalue against the ν-order stability region.
/// Strict inequalities; exact boundary hits count as outside.
pub fn region_check(lambda: Complex64, nu: FracOrder) -> Result<EigenCheck, StabilityError> {
    let v = nu.value();
    if v >= 1.0 {
        return Err(StabilityError::ClassicalOrder(v));
    }
    if lambda.norm_sqr() == 0.0 {
        return Ok(EigenCheck {
            lambda,
            in_region: true,
            boundary: false,
            degenerate_zero: true,
        });
    }
    let r = lambda.norm();
    let arg = lambda.arg().abs(); // principal value: real negatives give exactly π
    let angle_ok = arg > v * PI / 2.0;
    let bound = (2.0 * ((arg - PI) / (2.0 - v)).cos()).powf(v);
    let modulus_ok = r < bound;
    Ok(EigenCheck {
        lambda,
        in_region: angle_ok && modulus_ok,
        boundary: arg == v * PI / 2.0 || r == bound,
        degenerate_zero: false,
    })
}

/// Boolean form of [`region_check`].
pub fn in_stability_region(lambda: Complex64, nu: FracOrder) -> Result<bool, StabilityError> {
    region_check(lambda, nu).map(|c| c.in_region)
}

/// Classifies a 2-D fixed point from (tr J, det J) at order ν.
///
/// Requires `det > 0` (the classification's standing hypothesis) and
/// ν ∈ (0,1). Branches:
/// - `−tr/2 ≥ √det`: two negative real eigenvalues; stable ⟺
///   `ν > log₂((√ϖ − tr)/2)`, threshold reported.
/// - `|tr|/2 < √det`: complex pair `(tr ± i√(4det−tr²))/2`, decided by the
///   region test.
/// - otherwise (a non-negative real eigenvalue exists): `Inconclusive`,
///   reported unstable with per-eigenvalue details.
pub fn classify_2d(tr: f64, det: f64, nu: FracOrder) -> Result<StabilityVerdict, StabilityError> {
    if !(det > 0.0) {
        return Err(StabilityError::DetOutOfHypothesis(det));
    }
    let v = nu.value();
    if v >= 1.0 {
        return Err(StabilityError::ClassicalOrder(v));
    }

    let varpi = (tr * tr - 4.0 * det).abs();
    let sqrt_det = det.sqrt();

    if -tr / 2.0 >= sqrt_det {
        // Real pair, both negative (det > 0 keeps them the same sign).
        let threshold = ((varpi.sqrt() - tr) / 2.0).log2();
        let r = (tr * tr - 4.0 * det).max(0.0).sqrt();
        let details = [(tr - r) / 2.0, (tr + r) / 2.0]
            .into_iter()
            .map(|lam| region_check(Complex64::new(lam, 0.0), nu))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(StabilityVerdict {
            stable: v > threshold,
            branch: StabilityBranch::RealNegative,
            nu_threshold: Some(threshold),
            details,
        });
    }

    if tr.abs() / 2.0 < sqrt_det {
        let im = (4.0 * det - tr * tr).sqrt() / 2.0;
        let pair = [Complex64::new(tr / 2.0, -im), Complex64::new(tr / 2.0, im)];
        let details = pair
            .into_iter()
            .map(|lam| region_check(lam, nu))
            .collect::<Result<Vec<_>, _>>()?;
        let stable = details.iter().all(|c| c.in_region);
        return Ok(StabilityVerdict {
            stable,
            branch: StabilityBranch::Complex,
            nu_threshold: None,
            details,
        });
    }

    // tr/2 ≥ √det: a positive real eigenvalue — outside the classification.
    let r = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let details = [(tr - r) / 2.0, (tr + r) / 2.0]
        .into_iter()
        .map(|lam| region_check(Complex64::new(lam, 0.0), nu))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StabilityVerdict {
        stable: false,
        branch: StabilityBranch::Inconclusive,
        nu_threshold: None,
        details,
    })
}

/// Verdict for raw eigenvalues: stable iff every eigenvalue passes the
/// region test.
pub fn classify_eigenvalues(
    eigenvalues: &[Complex64],
    nu: FracOrder,
) -> Result<StabilityVerdict, StabilityError> {
    let details = eigenvalues
        .iter()
        .map(|&lam| region_check(lam, nu))
        .collect::<Result<Vec<_>, _>>()?;
    let stable = details.iter().all(|c| c.in_region);
    Ok(StabilityVerdict {
        stable,
        branch: StabilityBranch::GeneralEigenvalue,
        nu_threshold: None,
        details,
    })
}

/// The critical memory order at the interior equilibrium E₄:
/// `log₂((√((trJ)²−4detJ) − trJ)/2)` from the closed-form trace and
/// determinant. Errors when the discriminant is negative (complex pair) —
/// use [`classify_2d`] there.
pub fn nu_threshold_e4(params: &DuopolyParams) -> Result<f64, StabilityError> {
    let (tr, det) = params.tr_det_at_e4();
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        return Err(StabilityError::ComplexEigenvalues(disc));
    }
    Ok(((disc.sqrt() - tr) / 2.0).log2())
}
