//! Two-stage search for the sum secrecy rate.
//!
//! The rate axes `[0, C1]` and `[0, C2]` are split into `K` and `L` steps.
//! For every target pair the leakage rate is minimized by bisection on the
//! eavesdropper SINR bound `t`, each probe being a linear feasibility check.
//! The best cell maximizes achieved rates minus minimal leakage.

use rayon::prelude::*;
use thiserror::Error;

use crate::lp::{feasible, Feasibility, LpError};
use crate::model::{Mode, PowerAllocation, Scenario, SolverConfig};
use crate::programs::{build_program, sinr_target, split_point, EpigraphAux};
use crate::rates::{capacities, link_rate, worst_case_rates, CapacityTriple};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RegionError {
    #[error("rate targets cannot be met within the power budgets")]
    Infeasible,
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Result of minimizing the leakage rate for one target pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EaveOptimum {
    /// `log2(1 + t_min)`.
    pub re_min: f64,
    pub t_min: f64,
    pub alloc: PowerAllocation,
    /// Epigraph bounds at the returned point (robust mode only).
    pub aux: Option<EpigraphAux>,
    /// Number of feasibility probes spent.
    pub probes: usize,
}

/// Upper end of the bisection bracket: the eavesdropper SINR at full
/// message power, best case for the eavesdropper in robust mode.
pub fn bracket_top(scenario: &Scenario, mode: Mode) -> f64 {
    sinr_target(capacities(scenario, mode.is_robust()).ce)
}

fn probe(scenario: &Scenario, mode: Mode, r1: f64, r2: f64, t: f64, tol: f64) -> Result<Option<Vec<f64>>, LpError> {
    Ok(match feasible(&build_program(scenario, mode, r1, r2, t), tol)? {
        Feasibility::Feasible(x) => Some(x),
        Feasibility::Infeasible { .. } => None,
    })
}

/// Minimal leakage rate subject to both rate targets.
///
/// `t = 0` is probed first so that zero-leakage cells come out exact; then
/// the bracket top, which is feasible whenever the targets are reachable at
/// all; then bisection until the bracket is no wider than `cfg.zeta`.
pub fn min_eave_rate(
    scenario: &Scenario,
    r1_target: f64,
    r2_target: f64,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<EaveOptimum, RegionError> {
    let tol = cfg.feas_tol;
    let finish = |t: f64, x: Vec<f64>, probes: usize| {
        let (alloc, aux) = split_point(&x);
        EaveOptimum {
            re_min: (1.0 + t).log2(),
            t_min: t,
            alloc: alloc.clamped(),
            aux: mode.is_robust().then_some(aux),
            probes,
        }
    };

    if let Some(x) = probe(scenario, mode, r1_target, r2_target, 0.0, tol)? {
        return Ok(finish(0.0, x, 1));
    }
    let mut hi = bracket_top(scenario, mode);
    if hi <= 0.0 {
        return Err(RegionError::Infeasible);
    }
    let Some(mut best) = probe(scenario, mode, r1_target, r2_target, hi, tol)? else {
        return Err(RegionError::Infeasible);
    };
    let mut lo = 0.0;
    let mut probes = 2;
    while hi - lo > cfg.zeta {
        let mid = 0.5 * (lo + hi);
        probes += 1;
        match probe(scenario, mode, r1_target, r2_target, mid, tol)? {
            Some(x) => {
                hi = mid;
                best = x;
            }
            None => lo = mid,
        }
    }
    Ok(finish(hi, best, probes))
}

/// Rates delivered by `alloc`: nominal in perfect mode, worst case over the
/// error balls (self-interference residual as noise) in robust mode.
pub fn achieved_rates(scenario: &Scenario, alloc: &PowerAllocation, mode: Mode) -> (f64, f64) {
    match mode {
        Mode::Perfect => {
            let ch = &scenario.channels;
            (
                link_rate(ch.h21.norm_sqr(), alloc.p1s, alloc.p1n, scenario.n0),
                link_rate(ch.h12.norm_sqr(), alloc.p2s, alloc.p2n, scenario.n0),
            )
        }
        Mode::Robust => worst_case_rates(scenario, alloc),
    }
}

/// One `(k, l)` grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPoint {
    pub k: usize,
    pub l: usize,
    pub r1_target: f64,
    pub r2_target: f64,
    pub r1_achieved: f64,
    pub r2_achieved: f64,
    /// Minimal leakage rate; NaN for infeasible cells.
    pub re_min: f64,
    pub t_min: f64,
    /// `max(raw_sum_secrecy, 0)`.
    pub sum_secrecy: f64,
    /// `r1_achieved + r2_achieved - re_min`, unclamped.
    pub raw_sum_secrecy: f64,
    pub alloc: PowerAllocation,
    /// Whether the target pair is reachable within the budgets.
    pub feasible: bool,
}

impl RegionPoint {
    fn infeasible(k: usize, l: usize, r1_target: f64, r2_target: f64) -> Self {
        Self {
            k,
            l,
            r1_target,
            r2_target,
            r1_achieved: 0.0,
            r2_achieved: 0.0,
            re_min: f64::NAN,
            t_min: f64::NAN,
            sum_secrecy: 0.0,
            raw_sum_secrecy: f64::NAN,
            alloc: PowerAllocation::ZERO,
            feasible: false,
        }
    }

    /// Feasible with a nonnegative secrecy sum.
    pub fn in_region(&self) -> bool {
        self.feasible && self.raw_sum_secrecy >= 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionResult {
    pub mode: Mode,
    pub grid_k: usize,
    pub grid_l: usize,
    /// Capacities that span the target grid.
    pub capacities: CapacityTriple,
    /// Row-major over `k`, then `l`.
    pub points: Vec<RegionPoint>,
    /// `(k, l)` of the best feasible cell.
    pub best: Option<(usize, usize)>,
}

impl RegionResult {
    pub fn cell(&self, k: usize, l: usize) -> &RegionPoint {
        &self.points[k * (self.grid_l + 1) + l]
    }

    pub fn best_point(&self) -> Option<&RegionPoint> {
        self.best.map(|(k, l)| self.cell(k, l))
    }

    pub fn max_sum_secrecy(&self) -> f64 {
        self.best_point().map_or(0.0, |p| p.sum_secrecy)
    }
}

/// Evaluates one cell.
pub fn solve_cell(
    scenario: &Scenario,
    mode: Mode,
    cfg: &SolverConfig,
    k: usize,
    l: usize,
    r1_target: f64,
    r2_target: f64,
) -> Result<RegionPoint, RegionError> {
    match min_eave_rate(scenario, r1_target, r2_target, mode, cfg) {
        Ok(opt) => {
            let (r1, r2) = achieved_rates(scenario, &opt.alloc, mode);
            let raw = r1 + r2 - opt.re_min;
            Ok(RegionPoint {
                k,
                l,
                r1_target,
                r2_target,
                r1_achieved: r1,
                r2_achieved: r2,
                re_min: opt.re_min,
                t_min: opt.t_min,
                sum_secrecy: raw.max(0.0),
                raw_sum_secrecy: raw,
                alloc: opt.alloc,
                feasible: true,
            })
        }
        Err(RegionError::Infeasible) => Ok(RegionPoint::infeasible(k, l, r1_target, r2_target)),
        Err(e) => Err(e),
    }
}

/// Runs the full `(K + 1) x (L + 1)` sweep. Cells are solved in parallel and
/// assembled in index order.
pub fn sweep_region(scenario: &Scenario, mode: Mode, cfg: &SolverConfig) -> Result<RegionResult, RegionError> {
    let caps = capacities(scenario, mode.is_robust());
    let (kk, ll) = (cfg.grid_k, cfg.grid_l);
    let d1 = caps.c1 / kk as f64;
    let d2 = caps.c2 / ll as f64;
    let cells: Vec<(usize, usize)> = (0..=kk).flat_map(|k| (0..=ll).map(move |l| (k, l))).collect();
    let points = cells
        .par_iter()
        .map(|&(k, l)| {
            // Hit the capacities exactly at the far ends of the grid.
            let r1 = if k == kk { caps.c1 } else { k as f64 * d1 };
            let r2 = if l == ll { caps.c2 } else { l as f64 * d2 };
            solve_cell(scenario, mode, cfg, k, l, r1, r2)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut best: Option<&RegionPoint> = None;
    for p in points.iter().filter(|p| p.feasible) {
        if best.is_none_or(|b| p.sum_secrecy > b.sum_secrecy) {
            best = Some(p);
        }
    }
    let best = best.map(|p| (p.k, p.l));
    Ok(RegionResult {
        mode,
        grid_k: kk,
        grid_l: ll,
        capacities: caps,
        points,
        best,
    })
}

/// Pareto boundary of the achievable secrecy-rate region, sorted by `r1`.
///
/// Each in-region cell contributes the corners of its pentagon
/// `R1 <= r1_achieved, R2 <= r2_achieved, R1 + R2 <= sum_secrecy`.
pub fn frontier(result: &RegionResult) -> Vec<(f64, f64)> {
    let mut corners = Vec::new();
    for p in result.points.iter().filter(|p| p.in_region()) {
        let s = p.sum_secrecy;
        let a1 = p.r1_achieved.min(s);
        let b2 = p.r2_achieved.min(s);
        corners.push((a1, p.r2_achieved.min(s - a1)));
        corners.push((p.r1_achieved.min(s - b2), b2));
    }
    pareto_max(corners)
}

/// Pareto-maximal subset of `pts`, sorted by the first coordinate.
pub fn pareto_max(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        if out.last().is_none_or(|q| p.1 > q.1) {
            out.push(p);
        }
    }
    out.reverse();
    out
}

/// Whether every point of `inner` lies under the staircase of `outer`,
/// within `tol` in both coordinates.
pub fn dominated_by(inner: &[(f64, f64)], outer: &[(f64, f64)], tol: f64) -> bool {
    inner
        .iter()
        .all(|&(a, b)| outer.iter().any(|&(c, d)| a <= c + tol && b <= d + tol))
}
