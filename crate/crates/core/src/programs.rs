//! Fixed-`t` feasibility programs and the S-procedure certificate layer.
//!
//! For a fixed eavesdropper SINR bound `t` and fixed rate targets, both the
//! perfect-CSI and the robust problems are linear in the powers. The robust
//! one carries eight auxiliary epigraph variables `t1..t8`, each bounding one
//! signal or jamming term over its error ball. Every such bound is a single
//! scalar quadratic constraint, so the S-procedure is lossless and the 2x2
//! LMIs reduce to the closed-form rows built here. [`lmi_blocks`] and
//! [`find_certificate`] keep the matrix form around as an independent check.

use thiserror::Error;

use crate::lp::{FeasibilityProgram, LinearConstraint, VarId};
use crate::model::{Complex, Mode, PowerAllocation, Scenario};
use crate::rates::{grown_gain_sq, shrunk_gain_sq};

pub const P1S: VarId = 0;
pub const P1N: VarId = 1;
pub const P2S: VarId = 2;
pub const P2N: VarId = 3;
/// Index of `t1`; `t1..t8` occupy consecutive slots.
pub const T1: VarId = 4;

pub const PERFECT_VARS: usize = 4;
pub const ROBUST_VARS: usize = 12;

/// Default tolerance for certificate checks.
pub const CERT_TOL: f64 = 1e-8;

const GOLDEN_ITERS: usize = 200;

/// Epigraph bounds on the signal and jamming terms.
///
/// `t1`, `t2`: message power seen by the eavesdropper (upper bounds).
/// `t3`, `t4`: jamming power seen by the eavesdropper (lower bounds).
/// `t5`, `t7`: message power at the legitimate receivers (lower bounds).
/// `t6`, `t8`: jamming power at the legitimate receivers (upper bounds).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EpigraphAux {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub t5: f64,
    pub t6: f64,
    pub t7: f64,
    pub t8: f64,
}

impl EpigraphAux {
    pub fn from_array(t: [f64; 8]) -> Self {
        Self {
            t1: t[0],
            t2: t[1],
            t3: t[2],
            t4: t[3],
            t5: t[4],
            t6: t[5],
            t7: t[6],
            t8: t[7],
        }
    }

    pub fn as_array(&self) -> [f64; 8] {
        [self.t1, self.t2, self.t3, self.t4, self.t5, self.t6, self.t7, self.t8]
    }

    /// Sign constraints of the robust program (`t3..t8 >= 0`).
    pub fn signs_ok(&self, tol: f64) -> bool {
        self.as_array()[2..].iter().all(|&v| v >= -tol)
    }
}

/// S-procedure multipliers, one per LMI block.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LmiCertificate {
    pub lambda: [f64; 8],
}

/// Hermitian `[[a, b], [conj(b), c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a: f64,
    pub b: Complex,
    pub c: f64,
}

impl Matrix2 {
    pub fn new(a: f64, b: Complex, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn identity() -> Self {
        Self::new(1.0, Complex::new(0.0, 0.0), 1.0)
    }

    pub fn det(&self) -> f64 {
        self.a * self.c - self.b.norm_sqr()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let mean = 0.5 * (self.a + self.c);
        let half = 0.5 * (self.a - self.c);
        mean - (half * half + self.b.norm_sqr()).sqrt()
    }
}

/// 2x2 PSD test with slack `tol` on both diagonal entries and the
/// determinant.
pub fn psd2(m: &Matrix2, tol: f64) -> bool {
    m.a >= -tol && m.c >= -tol && m.det() >= -tol
}

/// Split a robust-program point into powers and epigraph bounds.
pub fn split_point(x: &[f64]) -> (PowerAllocation, EpigraphAux) {
    let alloc = PowerAllocation::new(x[P1S], x[P1N], x[P2S], x[P2N]);
    let aux = if x.len() >= ROBUST_VARS {
        let mut t = [0.0; 8];
        t.copy_from_slice(&x[T1..T1 + 8]);
        EpigraphAux::from_array(t)
    } else {
        EpigraphAux::default()
    };
    (alloc, aux)
}

fn t(i: usize) -> VarId {
    T1 + i - 1
}

fn push_budgets(prog: &mut FeasibilityProgram, scenario: &Scenario) {
    prog.push(LinearConstraint::le(vec![(P1S, 1.0), (P1N, 1.0)], scenario.p1));
    prog.push(LinearConstraint::le(vec![(P2S, 1.0), (P2N, 1.0)], scenario.p2));
}

/// Rate target `r` expressed as the SINR threshold `2^r - 1`.
pub fn sinr_target(r: f64) -> f64 {
    r.exp2() - 1.0
}

/// Linear program over `(P1s, P1n, P2s, P2n)` whose feasibility means both
/// rate targets are met with eavesdropper SINR at most `t`.
pub fn build_perfect_program(scenario: &Scenario, r1_target: f64, r2_target: f64, t: f64) -> FeasibilityProgram {
    let ch = &scenario.channels;
    let (z1, z2) = (ch.z1.norm_sqr(), ch.z2.norm_sqr());
    let (g21, g12) = (ch.h21.norm_sqr(), ch.h12.norm_sqr());
    let n0 = scenario.n0;
    let (s1, s2) = (sinr_target(r1_target), sinr_target(r2_target));

    let mut prog = FeasibilityProgram::new(PERFECT_VARS);
    prog.set_nonneg([P1S, P1N, P2S, P2N]);
    // (|z1|^2 P1s + |z2|^2 P2s) - t (N0 + |z1|^2 P1n + |z2|^2 P2n) <= 0
    prog.push(LinearConstraint::le(
        vec![(P1S, z1), (P2S, z2), (P1N, -t * z1), (P2N, -t * z2)],
        t * n0,
    ));
    // (2^R1 - 1)(N0 + |h21|^2 P1n) - |h21|^2 P1s <= 0
    prog.push(LinearConstraint::le(vec![(P1N, s1 * g21), (P1S, -g21)], -s1 * n0));
    prog.push(LinearConstraint::le(vec![(P2N, s2 * g12), (P2S, -g12)], -s2 * n0));
    push_budgets(&mut prog, scenario);
    prog
}

/// Worst-case gain coefficients used by the eight reduced S-procedure rows,
/// in block order.
#[derive(Debug, Clone, Copy)]
struct RobustGains {
    z1_hi: f64,
    z1_lo: f64,
    z2_hi: f64,
    z2_lo: f64,
    h21_lo: f64,
    h21_hi: f64,
    h12_lo: f64,
    h12_hi: f64,
}

impl RobustGains {
    fn new(s: &Scenario) -> Self {
        let ch = &s.channels;
        let e = &s.errors;
        Self {
            z1_hi: grown_gain_sq(ch.z1, e.eps1),
            z1_lo: shrunk_gain_sq(ch.z1, e.eps1),
            z2_hi: grown_gain_sq(ch.z2, e.eps2),
            z2_lo: shrunk_gain_sq(ch.z2, e.eps2),
            h21_lo: shrunk_gain_sq(ch.h21, e.eps21),
            h21_hi: grown_gain_sq(ch.h21, e.eps21),
            h12_lo: shrunk_gain_sq(ch.h12, e.eps12),
            h12_hi: grown_gain_sq(ch.h12, e.eps12),
        }
    }
}

/// Residuals of the eight reduced S-procedure rows (a row holds when its
/// residual is `<= 0`), in the same order as [`lmi_blocks`].
pub fn s_procedure_residuals(scenario: &Scenario, alloc: &PowerAllocation, aux: &EpigraphAux) -> [f64; 8] {
    let g = RobustGains::new(scenario);
    [
        g.z1_hi * alloc.p1s - aux.t1,
        aux.t3 - g.z1_lo * alloc.p1n,
        g.z2_hi * alloc.p2s - aux.t2,
        aux.t4 - g.z2_lo * alloc.p2n,
        aux.t5 - g.h21_lo * alloc.p1s,
        g.h21_hi * alloc.p1n - aux.t6,
        aux.t7 - g.h12_lo * alloc.p2s,
        g.h12_hi * alloc.p2n - aux.t8,
    ]
}

/// The epigraph values at which every reduced row is tight.
pub fn s_procedure_thresholds(scenario: &Scenario, alloc: &PowerAllocation) -> EpigraphAux {
    let g = RobustGains::new(scenario);
    EpigraphAux {
        t1: g.z1_hi * alloc.p1s,
        t2: g.z2_hi * alloc.p2s,
        t3: g.z1_lo * alloc.p1n,
        t4: g.z2_lo * alloc.p2n,
        t5: g.h21_lo * alloc.p1s,
        t6: g.h21_hi * alloc.p1n,
        t7: g.h12_lo * alloc.p2s,
        t8: g.h12_hi * alloc.p2n,
    }
}

/// Whether all eight reduced rows hold within `tol`.
pub fn s_procedure_rows_hold(scenario: &Scenario, alloc: &PowerAllocation, aux: &EpigraphAux, tol: f64) -> bool {
    s_procedure_residuals(scenario, alloc, aux).iter().all(|&r| r <= tol)
}

/// Linear program over the four powers and `t1..t8` whose feasibility means
/// both worst-case rate targets are met with the decoupled worst-case
/// eavesdropper SINR at most `t`.
pub fn build_robust_program(scenario: &Scenario, r1_target: f64, r2_target: f64, t_bound: f64) -> FeasibilityProgram {
    let g = RobustGains::new(scenario);
    let e = &scenario.errors;
    let n0 = scenario.n0;
    let (s1, s2) = (sinr_target(r1_target), sinr_target(r2_target));
    let self2 = e.eps22 * e.eps22;
    let self1 = e.eps11 * e.eps11;

    let mut prog = FeasibilityProgram::new(ROBUST_VARS);
    prog.set_nonneg([P1S, P1N, P2S, P2N]);
    // t1, t2 carry no explicit sign constraint; their lower-bound rows keep
    // them nonnegative anyway.
    prog.set_nonneg((3..=8).map(t));

    prog.push(LinearConstraint::le(vec![(P1S, g.z1_hi), (t(1), -1.0)], 0.0));
    prog.push(LinearConstraint::le(vec![(t(3), 1.0), (P1N, -g.z1_lo)], 0.0));
    prog.push(LinearConstraint::le(vec![(P2S, g.z2_hi), (t(2), -1.0)], 0.0));
    prog.push(LinearConstraint::le(vec![(t(4), 1.0), (P2N, -g.z2_lo)], 0.0));
    prog.push(LinearConstraint::le(vec![(t(5), 1.0), (P1S, -g.h21_lo)], 0.0));
    prog.push(LinearConstraint::le(vec![(P1N, g.h21_hi), (t(6), -1.0)], 0.0));
    prog.push(LinearConstraint::le(vec![(t(7), 1.0), (P2S, -g.h12_lo)], 0.0));
    prog.push(LinearConstraint::le(vec![(P2N, g.h12_hi), (t(8), -1.0)], 0.0));

    // (t1 + t2) - t (N0 + t3 + t4) <= 0
    prog.push(LinearConstraint::le(
        vec![(t(1), 1.0), (t(2), 1.0), (t(3), -t_bound), (t(4), -t_bound)],
        t_bound * n0,
    ));
    // (2^R1 - 1)(N0 + eps22^2 (P2s + P2n) + t6) - t5 <= 0
    prog.push(LinearConstraint::le(
        vec![(P2S, s1 * self2), (P2N, s1 * self2), (t(6), s1), (t(5), -1.0)],
        -s1 * n0,
    ));
    prog.push(LinearConstraint::le(
        vec![(P1S, s2 * self1), (P1N, s2 * self1), (t(8), s2), (t(7), -1.0)],
        -s2 * n0,
    ));
    push_budgets(&mut prog, scenario);
    prog
}

pub fn build_program(scenario: &Scenario, mode: Mode, r1_target: f64, r2_target: f64, t: f64) -> FeasibilityProgram {
    match mode {
        Mode::Perfect => build_perfect_program(scenario, r1_target, r2_target, t),
        Mode::Robust => build_robust_program(scenario, r1_target, r2_target, t),
    }
}

/// The eight S-procedure LMI blocks as affine functions of the multipliers.
pub fn lmi_blocks(
    scenario: &Scenario,
    alloc: &PowerAllocation,
    aux: &EpigraphAux,
    cert: &LmiCertificate,
) -> [Matrix2; 8] {
    let ch = &scenario.channels;
    let e = &scenario.errors;
    let l = &cert.lambda;
    let (p1s, p1n, p2s, p2n) = (alloc.p1s, alloc.p1n, alloc.p2s, alloc.p2n);
    let (z1, z2, h21, h12) = (ch.z1, ch.z2, ch.h21, ch.h12);
    let (e1, e2, e21, e12) = (e.eps1 * e.eps1, e.eps2 * e.eps2, e.eps21 * e.eps21, e.eps12 * e.eps12);
    [
        Matrix2::new(-p1s + l[0], -z1 * p1s, -z1.norm_sqr() * p1s + aux.t1 - l[0] * e1),
        Matrix2::new(p1n + l[1], z1 * p1n, z1.norm_sqr() * p1n - aux.t3 - l[1] * e1),
        Matrix2::new(-p2s + l[2], -z2 * p2s, -z2.norm_sqr() * p2s + aux.t2 - l[2] * e2),
        Matrix2::new(p2n + l[3], z2 * p2n, z2.norm_sqr() * p2n - aux.t4 - l[3] * e2),
        Matrix2::new(p1s + l[4], h21 * p1s, h21.norm_sqr() * p1s - aux.t5 - l[4] * e21),
        Matrix2::new(-p1n + l[5], -h21 * p1n, -h21.norm_sqr() * p1n + aux.t6 - l[5] * e21),
        Matrix2::new(p2s + l[6], h12 * p2s, h12.norm_sqr() * p2s - aux.t7 - l[6] * e12),
        Matrix2::new(-p2n + l[7], -h12 * p2n, -h12.norm_sqr() * p2n + aux.t8 - l[7] * e12),
    ]
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CertificateError {
    #[error("no multiplier makes LMI block {block} PSD (best minimum eigenvalue {margin:e})")]
    NotFound { block: usize, margin: f64 },
}

/// Upper end of the multiplier search bracket.
pub fn lambda_bracket(scenario: &Scenario) -> f64 {
    1e3 * (1.0 + scenario.p1.max(scenario.p2))
}

/// Searches for S-procedure multipliers certifying `(alloc, aux)`.
///
/// Each block depends on one multiplier only, and its minimum eigenvalue is
/// concave in that multiplier, so each is found by golden-section search
/// over `[0, lambda_bracket]`.
pub fn find_certificate(
    scenario: &Scenario,
    alloc: &PowerAllocation,
    aux: &EpigraphAux,
    tol: f64,
) -> Result<LmiCertificate, CertificateError> {
    let hi = lambda_bracket(scenario);
    let mut cert = LmiCertificate::default();
    for block in 0..8 {
        let margin = |lam: f64| {
            let mut c = LmiCertificate::default();
            c.lambda[block] = lam;
            lmi_blocks(scenario, alloc, aux, &c)[block].min_eigenvalue()
        };
        let lam = golden_max(&margin, 0.0, hi);
        let best = [0.0, lam, hi]
            .into_iter()
            .max_by(|a, b| margin(*a).total_cmp(&margin(*b)))
            .unwrap_or(0.0);
        cert.lambda[block] = best;
        let m = lmi_blocks(scenario, alloc, aux, &cert)[block];
        if !psd2(&m, tol) {
            return Err(CertificateError::NotFound {
                block: block + 1,
                margin: m.min_eigenvalue(),
            });
        }
    }
    Ok(cert)
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_ITERS {
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::feasible;
    use crate::rates::capacities;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn zero_eave(mut s: Scenario) -> Scenario {
        s.channels.z1 = Complex::new(0.0, 0.0);
        s.channels.z2 = Complex::new(0.0, 0.0);
        s
    }

    #[test]
    fn psd2_examples() {
        assert!(psd2(&Matrix2::identity(), 0.0));
        assert!(!psd2(&Matrix2::new(1.0, Complex::new(2.0, 0.0), 1.0), 1e-9));
        assert!(psd2(&Matrix2::new(0.0, Complex::new(0.0, 0.0), 0.0), 0.0));
    }

    #[test]
    fn min_eigenvalue_matches_closed_form() {
        let m = Matrix2::new(1.0, Complex::new(2.0, 0.0), 1.0);
        assert!((m.min_eigenvalue() + 1.0).abs() < 1e-15);
        assert!((m.det() + 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_targets_zero_eavesdropper_feasible() {
        let s = zero_eave(Scenario::reference(3.0, 0.0));
        let p = build_perfect_program(&s, 0.0, 0.0, 0.0);
        assert!(feasible(&p, TOL).unwrap().is_feasible());
    }

    #[test]
    fn zero_targets_reference_at_zero_t_gives_zero_messages() {
        let s = Scenario::reference(3.0, 0.0);
        let p = build_perfect_program(&s, 0.0, 0.0, 0.0);
        let x = feasible(&p, TOL).unwrap();
        let (a, _) = split_point(x.point().unwrap());
        assert!(a.p1s.abs() < 1e-12 && a.p2s.abs() < 1e-12);
    }

    #[test]
    fn target_above_capacity_is_infeasible() {
        let s = Scenario::reference(3.0, 0.0);
        let c = capacities(&s, false);
        let t = c.ce.exp2();
        let p = build_perfect_program(&s, c.c1 + 1e-3, 0.0, t);
        assert!(!feasible(&p, TOL).unwrap().is_feasible());
        let p = build_perfect_program(&s, c.c1 - 1e-3, 0.0, t);
        assert!(feasible(&p, TOL).unwrap().is_feasible());
    }

    #[test]
    fn robust_zero_targets_feasible_at_bracket_top() {
        let s = Scenario::reference(3.0, 0.03);
        let t = sinr_target(capacities(&s, true).ce);
        let p = build_robust_program(&s, 0.0, 0.0, t);
        assert!(feasible(&p, TOL).unwrap().is_feasible());
    }

    #[test]
    fn robust_without_error_matches_perfect_verdict() {
        let s = Scenario::reference(3.0, 0.0);
        let c = capacities(&s, false);
        for &(f1, f2) in &[(0.2, 0.3), (0.5, 0.5), (0.8, 0.8), (0.95, 0.1), (1.0, 1.0)] {
            for &t in &[0.0, 0.01, 0.05, 0.1, 0.2, 0.3] {
                let a = feasible(&build_perfect_program(&s, f1 * c.c1, f2 * c.c2, t), TOL).unwrap();
                let b = feasible(&build_robust_program(&s, f1 * c.c1, f2 * c.c2, t), TOL).unwrap();
                assert_eq!(a.is_feasible(), b.is_feasible(), "targets ({f1}, {f2}), t = {t}");
            }
        }
    }

    #[test]
    fn zero_point_blocks_are_zero() {
        let s = Scenario::reference(3.0, 0.02);
        for m in lmi_blocks(
            &s,
            &PowerAllocation::ZERO,
            &EpigraphAux::default(),
            &LmiCertificate::default(),
        ) {
            assert_eq!(m.a, 0.0);
            assert_eq!(m.c, 0.0);
            assert_eq!(m.b.norm(), 0.0);
            assert!(psd2(&m, 0.0));
        }
    }

    #[test]
    fn message_without_multiplier_is_not_psd() {
        let s = Scenario::reference(3.0, 0.02);
        let a = PowerAllocation::new(1.0, 0.0, 0.0, 0.0);
        let blocks = lmi_blocks(&s, &a, &EpigraphAux::default(), &LmiCertificate::default());
        assert_eq!(blocks[0].a, -1.0);
        assert!(!psd2(&blocks[0], 1e-9));
    }

    #[test]
    fn violated_row_has_no_certificate() {
        let s = Scenario::reference(3.0, 0.02);
        let a = PowerAllocation::new(1.0, 0.5, 1.0, 0.5);
        let hi = grown_gain_sq(s.channels.z1, 0.02);
        let mut aux = EpigraphAux {
            t1: 0.98 * hi,
            t2: 1.0,
            t6: 10.0,
            t8: 10.0,
            ..EpigraphAux::default()
        };
        let err = find_certificate(&s, &a, &aux, CERT_TOL).unwrap_err();
        assert!(matches!(err, CertificateError::NotFound { block: 1, .. }));
        aux.t1 = 1.02 * hi;
        assert!(find_certificate(&s, &a, &aux, CERT_TOL).is_ok());
    }

    #[test]
    fn feasible_robust_points_are_certified() {
        let s = Scenario::reference(3.0, 0.02);
        let c = capacities(&s, true);
        for &(f1, f2) in &[(0.0, 0.0), (0.3, 0.2), (0.5, 0.4), (0.7, 0.6), (0.9, 0.0)] {
            let t = sinr_target(c.ce);
            let x = feasible(&build_robust_program(&s, f1 * c.c1, f2 * c.c2, t), TOL).unwrap();
            let (alloc, aux) = split_point(x.point().unwrap());
            find_certificate(&s, &alloc, &aux, CERT_TOL).unwrap_or_else(|e| panic!("targets ({f1}, {f2}): {e}"));
        }
    }

    #[test]
    fn perfect_csi_interior_point_certified() {
        // Without error terms, multipliers certify points strictly inside
        // every row; boundary points only in the limit.
        let s = Scenario::reference(3.0, 0.0);
        let a = PowerAllocation::new(1.0, 0.5, 1.0, 0.5);
        let mut aux = s_procedure_thresholds(&s, &a);
        for t in [&mut aux.t1, &mut aux.t2, &mut aux.t6, &mut aux.t8] {
            *t += 0.1;
        }
        for t in [&mut aux.t3, &mut aux.t4, &mut aux.t5, &mut aux.t7] {
            *t -= 0.1;
        }
        assert!(s_procedure_rows_hold(&s, &a, &aux, 0.0));
        assert!(find_certificate(&s, &a, &aux, CERT_TOL).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn certificate_iff_rows_hold(
            eps in 0.005..0.1f64,
            p in prop::array::uniform4(0.0..2.0f64),
            scale in prop::array::uniform8(0.0..2.0f64),
        ) {
            let s = Scenario::reference(3.0, eps);
            let alloc = PowerAllocation::new(p[0], p[1], p[2], p[3]);
            // Place each t_i at a random multiple of its threshold.
            let thr = s_procedure_thresholds(&s, &alloc).as_array();
            let mut t = [0.0; 8];
            for i in 0..8 {
                t[i] = thr[i] * scale[i];
            }
            let aux = EpigraphAux::from_array(t);
            let rows = s_procedure_rows_hold(&s, &alloc, &aux, CERT_TOL);
            let cert = find_certificate(&s, &alloc, &aux, CERT_TOL).is_ok();
            prop_assert_eq!(rows, cert);
        }

        #[test]
        fn feasibility_nested_in_t(f1 in 0.0..1.0f64, f2 in 0.0..1.0f64, t in 0.0..0.4f64, dt in 0.0..0.2f64, robust in any::<bool>()) {
            let s = Scenario::reference(3.0, if robust { 0.02 } else { 0.0 });
            let mode = if robust { Mode::Robust } else { Mode::Perfect };
            let c = capacities(&s, robust);
            let lo = feasible(&build_program(&s, mode, f1 * c.c1, f2 * c.c2, t), TOL).unwrap();
            if lo.is_feasible() {
                let hi = feasible(&build_program(&s, mode, f1 * c.c1, f2 * c.c2, t + dt), TOL).unwrap();
                prop_assert!(hi.is_feasible());
            }
        }

        #[test]
        fn raising_targets_never_helps(f1 in 0.0..1.0f64, f2 in 0.0..1.0f64, d1 in 0.0..0.3f64, d2 in 0.0..0.3f64, t in 0.0..0.4f64, robust in any::<bool>()) {
            let s = Scenario::reference(3.0, if robust { 0.02 } else { 0.0 });
            let mode = if robust { Mode::Robust } else { Mode::Perfect };
            let c = capacities(&s, robust);
            let low = feasible(&build_program(&s, mode, f1 * c.c1, f2 * c.c2, t), TOL).unwrap();
            let high = feasible(&build_program(&s, mode, (f1 + d1) * c.c1, (f2 + d2) * c.c2, t), TOL).unwrap();
            if !low.is_feasible() {
                prop_assert!(!high.is_feasible());
            }
        }
    }
}
