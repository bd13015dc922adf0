//! Dense phase-one simplex for small linear feasibility systems.
//!
//! Every row is normalized to unit largest coefficient before solving, and
//! all tolerances apply to the normalized rows, so scaling a row by a
//! positive factor never changes the verdict. Pivoting follows Bland's rule.

use std::collections::BTreeSet;

use thiserror::Error;

pub type VarId = usize;

/// Entries at or below this magnitude are never used as pivots.
pub const PIVOT_EPS: f64 = 1e-12;
const COST_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub coeffs: Vec<(VarId, f64)>,
    pub bound: f64,
    pub sense: Sense,
}

impl LinearConstraint {
    pub fn le(coeffs: Vec<(VarId, f64)>, bound: f64) -> Self {
        Self {
            coeffs,
            bound,
            sense: Sense::Le,
        }
    }

    pub fn ge(coeffs: Vec<(VarId, f64)>, bound: f64) -> Self {
        Self {
            coeffs,
            bound,
            sense: Sense::Ge,
        }
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Largest coefficient magnitude, or 1 for an all-zero row.
    fn scale(&self) -> f64 {
        let s = self.coeffs.iter().fold(0.0f64, |m, &(_, a)| m.max(a.abs()));
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }

    /// Amount by which `x` violates the normalized row (negative when
    /// strictly satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let gap = self.lhs(x) - self.bound;
        let gap = match self.sense {
            Sense::Le => gap,
            Sense::Ge => -gap,
        };
        gap / self.scale()
    }

    /// `violation <= tol * (1 + |bound|)`, both measured on the normalized
    /// row.
    pub fn is_satisfied(&self, x: &[f64], tol: f64) -> bool {
        self.violation(x) <= tol * (1.0 + (self.bound / self.scale()).abs())
    }

    /// The same row multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&(j, a)| (j, a * factor)).collect(),
            bound: self.bound * factor,
            sense: self.sense,
        }
    }
}

/// A system of linear inequalities, some variables sign-constrained.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityProgram {
    pub num_vars: usize,
    pub constraints: Vec<LinearConstraint>,
    pub nonneg: BTreeSet<VarId>,
}

impl FeasibilityProgram {
    /// A program whose variables are all free until marked.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            constraints: Vec::new(),
            nonneg: BTreeSet::new(),
        }
    }

    pub fn push(&mut self, c: LinearConstraint) -> &mut Self {
        self.constraints.push(c);
        self
    }

    pub fn set_nonneg(&mut self, vars: impl IntoIterator<Item = VarId>) -> &mut Self {
        self.nonneg.extend(vars);
        self
    }

    /// Independent re-check of a candidate point, sign constraints included.
    pub fn is_satisfied(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.num_vars
            && self.nonneg.iter().all(|&j| x[j] >= -tol)
            && self.constraints.iter().all(|c| c.is_satisfied(x, tol))
    }

    fn check(&self) -> Result<(), LpError> {
        if self.num_vars == 0 {
            return Err(LpError::Malformed("program has no variables".into()));
        }
        if self.constraints.is_empty() {
            return Err(LpError::Malformed("program has no constraints".into()));
        }
        if let Some(&j) = self.nonneg.iter().find(|&&j| j >= self.num_vars) {
            return Err(LpError::Malformed(format!("sign constraint on unknown variable {j}")));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if !c.bound.is_finite() {
                return Err(LpError::Malformed(format!("row {i}: non-finite bound")));
            }
            for &(j, a) in &c.coeffs {
                if j >= self.num_vars {
                    return Err(LpError::Malformed(format!("row {i}: unknown variable {j}")));
                }
                if !a.is_finite() {
                    return Err(LpError::Malformed(format!("row {i}: non-finite coefficient")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<f64>),
    /// Phase one ended with total artificial mass above tolerance.
    Infeasible {
        phase_one: f64,
    },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn point(&self) -> Option<&[f64]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Malformed(String),
    #[error(
        "ill-conditioned tableau: entering column {column} has no pivot above {PIVOT_EPS:e} (largest {largest:e})"
    )]
    IllConditioned { column: usize, largest: f64 },
    #[error("pivot limit reached")]
    PivotLimit,
    #[error("solver point fails re-check on row {row} (violation {violation:e})")]
    Unsound { row: usize, violation: f64 },
}

/// Dense tableau in row-major order; the last column is the right-hand side.
struct Tableau {
    cols: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let p = self.data[r * w + c];
        for v in &mut self.data[r * w..(r + 1) * w] {
            *v /= p;
        }
        let (before, rest) = self.data.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }
}

/// Decides whether `prog` has a point satisfying every row within `tol`.
///
/// A returned point is re-checked against the original rows before being
/// reported; a point that fails is an [`LpError::Unsound`] diagnostic rather
/// than a verdict.
pub fn feasible(prog: &FeasibilityProgram, tol: f64) -> Result<Feasibility, LpError> {
    prog.check()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(LpError::Malformed("tolerance must be positive".into()));
    }

    // Free variables are split into a difference of two nonnegative columns.
    let mut col_of = Vec::with_capacity(prog.num_vars);
    let mut n_struct = 0;
    for j in 0..prog.num_vars {
        let free = !prog.nonneg.contains(&j);
        col_of.push((n_struct, free));
        n_struct += if free { 2 } else { 1 };
    }

    let m = prog.constraints.len();
    // Each row gets a slack column; rows whose slack cannot start basic also
    // get an artificial column.
    let mut needs_art = Vec::with_capacity(m);
    let mut flip = Vec::with_capacity(m);
    for c in &prog.constraints {
        let b = c.bound / c.scale();
        let f = b < 0.0;
        let slack_sign = match (c.sense, f) {
            (Sense::Le, false) | (Sense::Ge, true) => 1.0,
            _ => -1.0,
        };
        flip.push(f);
        needs_art.push(slack_sign < 0.0);
    }
    let n_art = needs_art.iter().filter(|&&a| a).count();
    let slack0 = n_struct;
    let art0 = slack0 + m;
    let cols = art0 + n_art;

    let mut t = Tableau {
        cols,
        data: vec![0.0; m * (cols + 1)],
        basis: vec![0; m],
    };
    let w = cols + 1;
    let mut next_art = art0;
    for (i, c) in prog.constraints.iter().enumerate() {
        let s = c.scale();
        let sign = if flip[i] { -1.0 } else { 1.0 };
        let row = &mut t.data[i * w..(i + 1) * w];
        for &(j, a) in &c.coeffs {
            let (col, free) = col_of[j];
            let v = sign * a / s;
            row[col] += v;
            if free {
                row[col + 1] -= v;
            }
        }
        let slack = match c.sense {
            Sense::Le => 1.0,
            Sense::Ge => -1.0,
        };
        row[slack0 + i] = sign * slack;
        row[cols] = sign * c.bound / s;
        if needs_art[i] {
            row[next_art] = 1.0;
            t.basis[i] = next_art;
            next_art += 1;
        } else {
            t.basis[i] = slack0 + i;
        }
    }

    let is_art = |j: usize| j >= art0;
    let mut pivots = 0;
    loop {
        // Reduced cost of column j for "minimize the sum of artificials".
        let entering = (0..cols).find(|&j| {
            if t.basis.contains(&j) {
                return false;
            }
            let z: f64 = (0..m).filter(|&i| is_art(t.basis[i])).map(|i| t.at(i, j)).sum();
            let cost = if is_art(j) { 1.0 } else { 0.0 };
            cost - z < -COST_EPS
        });
        let Some(c) = entering else { break };

        let mut leave: Option<(usize, f64)> = None;
        let mut largest = 0.0f64;
        for i in 0..m {
            let a = t.at(i, c);
            largest = largest.max(a);
            if a > PIVOT_EPS {
                let ratio = t.rhs(i).max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best || (ratio == best && t.basis[i] < t.basis[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        // Phase one is bounded below, so a column without a usable pivot
        // can only come from round-off.
        let Some((r, _)) = leave else {
            return Err(LpError::IllConditioned { column: c, largest });
        };
        t.pivot(r, c);
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(LpError::PivotLimit);
        }
    }

    let phase_one: f64 = (0..m).filter(|&i| is_art(t.basis[i])).map(|i| t.rhs(i).max(0.0)).sum();
    if phase_one > tol {
        return Ok(Feasibility::Infeasible { phase_one });
    }

    let mut cols_val = vec![0.0; cols];
    for i in 0..m {
        cols_val[t.basis[i]] = t.rhs(i).max(0.0);
    }
    let x: Vec<f64> = col_of
        .iter()
        .map(|&(col, free)| {
            if free {
                cols_val[col] - cols_val[col + 1]
            } else {
                cols_val[col]
            }
        })
        .collect();

    for (row, c) in prog.constraints.iter().enumerate() {
        if !c.is_satisfied(&x, tol) {
            return Err(LpError::Unsound {
                row,
                violation: c.violation(&x),
            });
        }
    }
    Ok(Feasibility::Feasible(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn interval(lo: f64, hi: f64) -> FeasibilityProgram {
        let mut p = FeasibilityProgram::new(1);
        p.push(LinearConstraint::ge(vec![(0, 1.0)], lo))
            .push(LinearConstraint::le(vec![(0, 1.0)], hi));
        p
    }

    #[test]
    fn unit_interval_is_feasible() {
        let mut p = interval(0.0, 1.0);
        p.set_nonneg([0]);
        let x = feasible(&p, TOL).unwrap();
        let x = x.point().unwrap();
        assert!((0.0..=1.0).contains(&x[0]));
    }

    #[test]
    fn crossed_bounds_are_infeasible() {
        let mut p = interval(1.0, 0.0);
        p.set_nonneg([0]);
        match feasible(&p, TOL).unwrap() {
            Feasibility::Infeasible { phase_one } => assert!(phase_one > TOL),
            f => panic!("expected infeasible, got {f:?}"),
        }
    }

    #[test]
    fn free_variable_reaches_negative_values() {
        let p = interval(-3.0, -2.0);
        let f = feasible(&p, TOL).unwrap();
        let x = f.point().unwrap()[0];
        assert!((-3.0 - 1e-9..=-2.0 + 1e-9).contains(&x), "x = {x}");
        let mut q = p.clone();
        q.set_nonneg([0]);
        assert!(!feasible(&q, TOL).unwrap().is_feasible());
    }

    #[test]
    fn degenerate_vertex() {
        // Many redundant rows meeting at (1, 0).
        let mut p = FeasibilityProgram::new(2);
        p.set_nonneg([0, 1]);
        for k in 1..8 {
            let k = k as f64;
            p.push(LinearConstraint::le(vec![(0, k), (1, k)], k));
            p.push(LinearConstraint::ge(vec![(0, k), (1, -k)], k));
        }
        let x = feasible(&p, TOL).unwrap();
        let x = x.point().unwrap();
        assert!((x[0] - 1.0).abs() < 1e-9 && x[1].abs() < 1e-9);
    }

    #[test]
    fn equality_via_two_rows() {
        let mut p = FeasibilityProgram::new(3);
        p.set_nonneg([0, 1, 2]);
        p.push(LinearConstraint::le(vec![(0, 1.0), (1, 2.0), (2, 3.0)], 6.0));
        p.push(LinearConstraint::ge(vec![(0, 1.0), (1, 2.0), (2, 3.0)], 6.0));
        p.push(LinearConstraint::ge(vec![(2, 1.0)], 1.5));
        p.push(LinearConstraint::le(vec![(0, 1.0), (1, -1.0)], -0.25));
        let x = feasible(&p, TOL).unwrap();
        assert!(p.is_satisfied(x.point().unwrap(), TOL));
    }

    #[test]
    fn zero_row_is_decided_by_its_bound() {
        let mut p = FeasibilityProgram::new(1);
        p.set_nonneg([0]);
        p.push(LinearConstraint::le(vec![(0, 0.0)], 0.5));
        assert!(feasible(&p, TOL).unwrap().is_feasible());
        p.push(LinearConstraint::le(vec![(0, 0.0)], -0.5));
        assert!(!feasible(&p, TOL).unwrap().is_feasible());
    }

    #[test]
    fn malformed_programs() {
        assert!(matches!(
            feasible(&FeasibilityProgram::new(1), TOL),
            Err(LpError::Malformed(_))
        ));
        assert!(matches!(feasible(&interval(0.0, 1.0), 0.0), Err(LpError::Malformed(_))));
        let mut p = FeasibilityProgram::new(1);
        p.push(LinearConstraint::le(vec![(3, 1.0)], 1.0));
        assert!(matches!(feasible(&p, TOL), Err(LpError::Malformed(_))));
        let mut p = FeasibilityProgram::new(1);
        p.push(LinearConstraint::le(vec![(0, f64::NAN)], 1.0));
        assert!(matches!(feasible(&p, TOL), Err(LpError::Malformed(_))));
        let mut p = FeasibilityProgram::new(0);
        p.push(LinearConstraint::le(vec![], 1.0));
        assert!(matches!(feasible(&p, TOL), Err(LpError::Malformed(_))));
    }

    fn arb_program() -> impl Strategy<Value = FeasibilityProgram> {
        let row = (prop::collection::vec(-3.0..3.0f64, 3), -4.0..4.0f64, any::<bool>());
        (
            prop::collection::vec(row, 1..7),
            prop::collection::vec(any::<bool>(), 3),
        )
            .prop_map(|(rows, signs)| {
                let mut p = FeasibilityProgram::new(3);
                for (j, s) in signs.into_iter().enumerate() {
                    if s {
                        p.set_nonneg([j]);
                    }
                }
                // Keep the region bounded.
                for j in 0..3 {
                    p.push(LinearConstraint::le(vec![(j, 1.0)], 5.0));
                    p.push(LinearConstraint::ge(vec![(j, 1.0)], -5.0));
                }
                for (a, b, le) in rows {
                    let coeffs = a.into_iter().enumerate().collect();
                    p.push(if le {
                        LinearConstraint::le(coeffs, b)
                    } else {
                        LinearConstraint::ge(coeffs, b)
                    });
                }
                p
            })
    }

    /// Brute force over a lattice in the box: any lattice point that
    /// satisfies every row with margin proves feasibility.
    fn lattice_witness(p: &FeasibilityProgram) -> bool {
        let n = 41;
        let pts: Vec<f64> = (0..n).map(|i| -5.0 + 10.0 * i as f64 / (n - 1) as f64).collect();
        for &a in &pts {
            for &b in &pts {
                for &c in &pts {
                    let x = [a, b, c];
                    if p.nonneg.iter().all(|&j| x[j] >= 0.0) && p.constraints.iter().all(|r| r.violation(&x) < -1e-6) {
                        return true;
                    }
                }
            }
        }
        false
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn returned_points_pass_recheck(p in arb_program()) {
            if let Feasibility::Feasible(x) = feasible(&p, TOL).unwrap() {
                prop_assert!(p.is_satisfied(&x, TOL));
            }
        }

        #[test]
        fn strict_lattice_witness_implies_feasible(p in arb_program()) {
            if lattice_witness(&p) {
                prop_assert!(feasible(&p, TOL).unwrap().is_feasible());
            }
        }

        #[test]
        fn dropping_rows_preserves_feasibility(p in arb_program(), keep in prop::collection::vec(any::<bool>(), 12)) {
            let mut sub = p.clone();
            sub.constraints = p.constraints.iter().enumerate()
                .filter(|(i, _)| *i < 6 || keep.get(*i - 6).copied().unwrap_or(true))
                .map(|(_, c)| c.clone())
                .collect();
            if feasible(&p, TOL).unwrap().is_feasible() {
                prop_assert!(feasible(&sub, TOL).unwrap().is_feasible());
            }
        }

        #[test]
        fn verdict_is_scale_invariant(p in arb_program(), factors in prop::collection::vec(1e-3..1e3f64, 13)) {
            let mut q = p.clone();
            for (c, f) in q.constraints.iter_mut().zip(factors) {
                *c = c.scaled(f);
            }
            prop_assert_eq!(
                feasible(&p, TOL).unwrap().is_feasible(),
                feasible(&q, TOL).unwrap().is_feasible()
            );
        }
    }
}
