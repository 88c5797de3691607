//! The duopoly model: linear demand, quadratic costs, gradient adjustment.
//!
//! Two firms choose outputs `q1, q2`. Price is `p = b − d(q1+q2)`, firm i's
//! profit is `p·qᵢ − ½cᵢqᵢ²`, and each firm adjusts output proportionally to
//! output times its own marginal profit ("bounded rationality"):
//!
//! ```text
//! Δq_i = α_i · q_i · Φ_i(q),   Φ_i = b − (c_i + 2d)q_i − d q_j
//! ```
//!
//! That adjustment vector is the right-hand side handed to the fractional
//! integrator in [`crate::frac`]. The map has four fixed points (both firms
//! out, two monopoly corners, and the interior Nash point E₄); their closed
//! forms and the Jacobian trace/determinant at E₄ live here.
//!
//! Nothing is clamped: the map is polynomial on R², and negative prices or
//! quantities are meaningful dynamics (reported via [`admissibility`], never
//! altered).

use num_complex::Complex64;
use thiserror::Error;

use crate::frac::{MapFn, Trajectory};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("model parameter {name} must be positive and finite, got {value}")]
    NonPositiveParam { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Firm {
    One,
    Two,
}

/// Model parameters (α₁, α₂, b, d, c₁, c₂), all strictly positive:
/// adjustment speeds, demand intercept/slope, and cost curvatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuopolyParams {
    alpha1: f64,
    alpha2: f64,
    b: f64,
    d: f64,
    c1: f64,
    c2: f64,
}

/// The four fixed points of the adjustment map, in conventional order,
/// plus the auxiliary scalar `m` entering E₄'s closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumSet {
    pub e1: [f64; 2],
    pub e2: [f64; 2],
    pub e3: [f64; 2],
    pub e4: [f64; 2],
    pub m: f64,
}

impl EquilibriumSet {
    pub fn points(&self) -> [(&'static str, [f64; 2]); 4] {
        [("E1", self.e1), ("E2", self.e2), ("E3", self.e3), ("E4", self.e4)]
    }
}

/// Jacobian of the adjustment map at a point: matrix, trace, determinant,
/// and the eigenvalues of `λ² − tr·λ + det`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianSummary {
    pub matrix: [[f64; 2]; 2],
    pub tr: f64,
    pub det: f64,
    pub eigenvalues: [Complex64; 2],
}

impl DuopolyParams {
    pub fn new(
        alpha1: f64,
        alpha2: f64,
        b: f64,
        d: f64,
        c1: f64,
        c2: f64,
    ) -> Result<Self, ModelError> {
        for (name, value) in [
            ("alpha1", alpha1),
            ("alpha2", alpha2),
            ("b", b),
            ("d", d),
            ("c1", c1),
            ("c2", c2),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ModelError::NonPositiveParam { name, value });
            }
        }
        Ok(Self { alpha1, alpha2, b, d, c1, c2 })
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    fn alpha(&self, firm: Firm) -> f64 {
        match firm {
            Firm::One => self.alpha1,
            Firm::Two => self.alpha2,
        }
    }

    fn c(&self, firm: Firm) -> f64 {
        match firm {
            Firm::One => self.c1,
            Firm::Two => self.c2,
        }
    }

    /// Inverse demand `p = b − d(q1+q2)`; may be negative (not clamped).
    pub fn price(&self, q1: f64, q2: f64) -> f64 {
        self.b - self.d * (q1 + q2)
    }

    /// Firm i's profit `p·qᵢ − ½cᵢqᵢ²`.
    pub fn profit(&self, q1: f64, q2: f64, firm: Firm) -> f64 {
        let qi = match firm {
            Firm::One => q1,
            Firm::Two => q2,
        };
        self.price(q1, q2) * qi - 0.5 * self.c(firm) * qi * qi
    }

    /// Marginal profit `Φᵢ = b − (cᵢ+2d)qᵢ − d qⱼ` (∂profitᵢ/∂qᵢ).
    pub fn marginal_profit(&self, q1: f64, q2: f64, firm: Firm) -> f64 {
        let (qi, qj) = match firm {
            Firm::One => (q1, q2),
            Firm::Two => (q2, q1),
        };
        self.b - (self.c(firm) + 2.0 * self.d) * qi - self.d * qj
    }

    /// The adjustment vector `(α₁q₁Φ₁, α₂q₂Φ₂)` — the map's right-hand side.
    pub fn rhs(&self, q: [f64; 2]) -> [f64; 2] {
        [
            self.alpha(Firm::One) * q[0] * self.marginal_profit(q[0], q[1], Firm::One),
            self.alpha(Firm::Two) * q[1] * self.marginal_profit(q[0], q[1], Firm::Two),
        ]
    }

    /// All four fixed points in closed form (no root-finding).
    pub fn equilibria(&self) -> EquilibriumSet {
        let (b, d, c1, c2) = (self.b, self.d, self.c1, self.c2);
        let m = b / (c1 * c2 + 2.0 * c1 * d + 2.0 * c2 * d + 3.0 * d * d);
        EquilibriumSet {
            e1: [0.0, 0.0],
            e2: [0.0, b / (c2 + 2.0 * d)],
            e3: [b / (c1 + 2.0 * d), 0.0],
            e4: [m * (c2 + d), m * (c1 + d)],
            m,
        }
    }

    /// Jacobian of the adjustment map at `q`, from the analytic partials.
    pub fn jacobian_at(&self, q: [f64; 2]) -> JacobianSummary {
        let (b, d) = (self.b, self.d);
        let j11 = self.alpha1 * (b - 2.0 * (self.c1 + 2.0 * d) * q[0] - d * q[1]);
        let j12 = -self.alpha1 * d * q[0];
        let j21 = -self.alpha2 * d * q[1];
        let j22 = self.alpha2 * (b - 2.0 * (self.c2 + 2.0 * d) * q[1] - d * q[0]);
        summary_from_matrix([[j11, j12], [j21, j22]])
    }

    /// Trace and determinant of the Jacobian at E₄ from the equilibrium's
    /// dedicated closed-form entries (an algebraic route independent of
    /// [`Self::jacobian_at`], which substitutes E₄ into the general partials).
    pub fn tr_det_at_e4(&self) -> (f64, f64) {
        let (a1, a2, b, d, c1, c2) = (self.alpha1, self.alpha2, self.b, self.d, self.c1, self.c2);
        let m = self.equilibria().m;
        let j11 = a1 * (b - m * (2.0 * c1 * c2 + 5.0 * d * d + d * (3.0 * c1 + 4.0 * c2)));
        let j22 = a2 * (b - m * (2.0 * c1 * c2 + 5.0 * d * d + d * (4.0 * c1 + 3.0 * c2)));
        let j12 = -a1 * m * d * (c2 + d);
        let j21 = -a2 * m * d * (c1 + d);
        (j11 + j22, j11 * j22 - j12 * j21)
    }
}

fn summary_from_matrix(m: [[f64; 2]; 2]) -> JacobianSummary {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = tr * tr - 4.0 * det;
    let eigenvalues = if disc >= 0.0 {
        let r = disc.sqrt();
        [Complex64::new((tr - r) / 2.0, 0.0), Complex64::new((tr + r) / 2.0, 0.0)]
    } else {
        let im = (-disc).sqrt() / 2.0;
        [Complex64::new(tr / 2.0, -im), Complex64::new(tr / 2.0, im)]
    };
    JacobianSummary { matrix: m, tr, det, eigenvalues }
}

impl MapFn for DuopolyParams {
    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        let v = self.rhs([x[0], x[1]]);
        out[0] = v[0];
        out[1] = v[1];
    }
}

/// Where an orbit first leaves the economically meaningful region, if ever.
/// Informational only — the dynamics never clamps.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AdmissibilityReport {
    pub negative_quantity_at: Option<usize>,
    pub negative_price_at: Option<usize>,
}

/// Scans a duopoly orbit for negative outputs or negative prices.
pub fn admissibility(traj: &Trajectory, params: &DuopolyParams) -> AdmissibilityReport {
    let mut report = AdmissibilityReport::default();
    for (n, s) in traj.states().enumerate() {
        if report.negative_quantity_at.is_none() && (s[0] < 0.0 || s[1] < 0.0) {
            report.negative_quantity_at = Some(n);
        }
        if report.negative_price_at.is_none() && params.price(s[0], s[1]) < 0.0 {
            report.negative_price_at = Some(n);
        }
        if report.negative_quantity_at.is_some() && report.negative_price_at.is_some() {
            break;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The benchmark parameter set used across the experiment suite.
    pub(crate) fn bench_params() -> DuopolyParams {
        DuopolyParams::new(0.45, 0.12, 6.0, 4.1, 0.2, 0.3).unwrap()
    }

    #[test]
    fn rejects_non_positive_parameters() {
        assert!(DuopolyParams::new(0.0, 0.1, 6.0, 4.1, 0.2, 0.3).is_err());
        assert!(DuopolyParams::new(0.4, 0.1, 6.0, -4.1, 0.2, 0.3).is_err());
        assert!(DuopolyParams::new(0.4, 0.1, f64::NAN, 4.1, 0.2, 0.3).is_err());
    }

    #[test]
    fn price_hand_values() {
        let p = bench_params();
        assert_eq!(p.price(0.0, 0.0), 6.0);
        let market_clear = DuopolyParams::new(0.4, 0.1, 6.0, 3.0, 0.2, 0.3).unwrap();
        assert_eq!(market_clear.price(1.0, 1.0), 0.0);
    }

    #[test]
    fn profit_zero_output_and_symmetry() {
        let p = bench_params();
        assert_eq!(p.profit(0.0, 0.7, Firm::One), 0.0);
        let sym = DuopolyParams::new(0.45, 0.12, 6.0, 4.1, 0.25, 0.25).unwrap();
        let (q, r) = (0.31, 0.31);
        assert_eq!(sym.profit(q, r, Firm::One), sym.profit(q, r, Firm::Two));
    }

    #[test]
    fn marginal_profit_hand_values() {
        let p = bench_params();
        assert_eq!(p.marginal_profit(0.0, 0.0, Firm::One), 6.0);
        // 6 − (0.2+8.2)·0.3 − 4.1·0.3 = 2.25 and 6 − 8.5·0.3 − 4.1·0.3 = 2.22
        assert!((p.marginal_profit(0.3, 0.3, Firm::One) - 2.25).abs() < 1e-15);
        assert!((p.marginal_profit(0.3, 0.3, Firm::Two) - 2.22).abs() < 1e-15);
    }

    #[test]
    fn rhs_hand_values_and_fixed_points() {
        let p = bench_params();
        assert_eq!(p.rhs([0.0, 0.0]), [0.0, 0.0]);
        let f = p.rhs([0.3, 0.3]);
        assert!((f[0] - 0.30375).abs() < 1e-15);
        assert!((f[1] - 0.07992).abs() < 1e-15);
        let e4 = p.equilibria().e4;
        let r = p.rhs(e4);
        assert!(r[0].abs() < 1e-12 && r[1].abs() < 1e-12);
    }

    #[test]
    fn equilibria_closed_forms() {
        let p = bench_params();
        let eq = p.equilibria();
        assert_eq!(eq.e1, [0.0, 0.0]);
        assert!((eq.e2[1] - 6.0 / 8.5).abs() < 1e-15);
        assert!((eq.e3[0] - 6.0 / 8.4).abs() < 1e-15);
        let sym = DuopolyParams::new(0.45, 0.12, 6.0, 4.1, 0.25, 0.25).unwrap();
        let se = sym.equilibria();
        assert_eq!(se.e4[0], se.e4[1]);
    }

    #[test]
    fn jacobian_at_origin_is_diagonal() {
        let p = bench_params();
        let j = p.jacobian_at([0.0, 0.0]);
        assert_eq!(j.matrix, [[2.7, 0.0], [0.0, 0.72]]);
        assert_eq!(j.tr, 2.7 + 0.72);
    }

    #[test]
    fn eigenvalues_solve_characteristic_polynomial() {
        let p = bench_params();
        for q in [[0.0, 0.0], [0.3, 0.3], p.equilibria().e4, [1.2, -0.4]] {
            let j = p.jacobian_at(q);
            for lam in j.eigenvalues {
                let res = lam * lam - j.tr * lam + j.det;
                assert!(res.norm() < 1e-10, "residual {} at {:?}", res.norm(), q);
            }
        }
    }

    #[test]
    fn closed_form_tr_det_match_matrix_route() {
        let p = bench_params();
        let (tr, det) = p.tr_det_at_e4();
        let j = p.jacobian_at(p.equilibria().e4);
        assert!((tr - j.tr).abs() <= 1e-10 * j.tr.abs());
        assert!((det - j.det).abs() <= 1e-10 * j.det.abs());
    }

    #[test]
    fn admissibility_flags_first_violation() {
        let p = bench_params();
        let t = crate::frac::integrate(&p, crate::frac::FracOrder::new(1.0).unwrap(), &[0.3, 0.3], 50, 1e6)
            .unwrap();
        let rep = admissibility(&t, &p);
        // This orbit converges inside the positive orthant with positive prices.
        assert_eq!(rep, AdmissibilityReport::default());
    }
}
