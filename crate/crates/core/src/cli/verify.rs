//! Oracle cross-checks behind the `verify` subcommand.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lp::feasible;
use crate::model::{Mode, PowerAllocation, Scenario, SolverConfig};
use crate::oracle::{brute_force_sum_secrecy, grid_max_eave_rate, grid_min_link_rate, ErrorGrid, GridSpec};
use crate::programs::{
    build_program, find_certificate, s_procedure_rows_hold, s_procedure_thresholds, EpigraphAux, CERT_TOL,
};
use crate::rates::{worst_case_eave_rate_upper, worst_case_link_rate};
use crate::region::{sweep_region, RegionError};

const SUM_RATE_TOL: f64 = 0.05;
const LINK_REL_TOL: f64 = 1e-4;
const CERT_POINTS: usize = 200;
const SEED: u64 = 0x5ec2e7;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Uniform split of each budget between message and jamming.
pub fn random_alloc(rng: &mut ChaCha8Rng, s: &Scenario) -> PowerAllocation {
    let (a, b, c, d): (f64, f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen(), rng.gen());
    PowerAllocation::new(s.p1 * a * b, s.p1 * a * (1.0 - b), s.p2 * c * d, s.p2 * c * (1.0 - d))
}

/// Epigraph values near the tight thresholds. Half the points keep every
/// row on its satisfied side, the rest pick sides at random.
pub fn random_aux(rng: &mut ChaCha8Rng, s: &Scenario, a: &PowerAllocation) -> EpigraphAux {
    let thr = s_procedure_thresholds(s, a).as_array();
    let all_hold = rng.gen_bool(0.5);
    let mut t = [0.0; 8];
    for (i, (ti, th)) in t.iter_mut().zip(thr).enumerate() {
        // t1, t2, t6, t8 bound from above; the others from below.
        let upper = matches!(i, 0 | 1 | 5 | 7);
        let hold = all_hold || rng.gen_bool(0.5);
        let shift = rng.gen_range(1e-6..0.05) * (1.0 + th);
        *ti = if upper == hold {
            th + shift
        } else {
            (th - shift).max(0.0)
        };
    }
    EpigraphAux::from_array(t)
}

/// Runs every cross-check on `scenario` with the grids in `cfg`.
pub fn run_checks(scenario: &Scenario, cfg: &SolverConfig) -> Result<Report, RegionError> {
    let mut report = Report::default();
    let nominal = scenario.with_errors(Default::default());

    let sweep = sweep_region(&nominal, Mode::Perfect, cfg)?;
    let (oracle, _) = brute_force_sum_secrecy(&nominal, &GridSpec::new(cfg.oracle_power_grid));
    let gap = (sweep.max_sum_secrecy() - oracle).abs();
    report.push(
        "sum secrecy vs power grid",
        gap <= SUM_RATE_TOL,
        format!(
            "sweep {:.6}, grid {:.6}, gap {:.2e}",
            sweep.max_sum_secrecy(),
            oracle,
            gap
        ),
    );

    let step = cfg.zeta.max(2.0 * cfg.feas_tol);
    let mut broken = 0;
    let mut cells = 0;
    for p in sweep.points.iter().filter(|p| p.feasible) {
        cells += 1;
        let at = feasible(
            &build_program(&nominal, Mode::Perfect, p.r1_target, p.r2_target, p.t_min),
            cfg.feas_tol,
        )?;
        let below = feasible(
            &build_program(&nominal, Mode::Perfect, p.r1_target, p.r2_target, p.t_min - step),
            cfg.feas_tol,
        )?;
        if !at.is_feasible() || below.is_feasible() {
            broken += 1;
        }
    }
    report.push(
        "bisection brackets the threshold",
        broken == 0,
        format!("{broken} of {cells} feasible cells violate the bracket"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let grid = ErrorGrid::new(cfg.oracle_error_grid, 64);
    let e = scenario.errors;
    let ch = scenario.channels;
    let mut worst_rel = 0.0f64;
    let mut bound_broken = 0;
    for _ in 0..10 {
        let a = random_alloc(&mut rng, scenario);
        let closed = worst_case_link_rate(ch.h21, e.eps21, e.eps22, a.p1s, a.p1n, a.p2s + a.p2n, scenario.n0);
        let grid_v = grid_min_link_rate(
            ch.h21,
            e.eps21,
            e.eps22,
            a.p1s,
            a.p1n,
            a.p2s + a.p2n,
            scenario.n0,
            &grid,
        );
        worst_rel = worst_rel.max((closed - grid_v).abs() / grid_v.abs().max(1e-12));
        if worst_case_eave_rate_upper(scenario, &a) < grid_max_eave_rate(scenario, &a, &grid) - 1e-12 {
            bound_broken += 1;
        }
    }
    report.push(
        "closed-form worst-case link rate",
        worst_rel <= LINK_REL_TOL,
        format!("largest relative gap {worst_rel:.2e}"),
    );
    report.push(
        "leakage upper bound dominates error grid",
        bound_broken == 0,
        format!("{bound_broken} of 10 allocations violate the bound"),
    );

    let (mut disagree, mut holding) = (0, 0);
    for _ in 0..CERT_POINTS {
        let a = random_alloc(&mut rng, scenario);
        let aux = random_aux(&mut rng, scenario, &a);
        let rows = s_procedure_rows_hold(scenario, &a, &aux, CERT_TOL);
        holding += usize::from(rows);
        let cert = find_certificate(scenario, &a, &aux, CERT_TOL).is_ok();
        if rows != cert {
            disagree += 1;
        }
    }
    report.push(
        "LMI certificates match reduced rows",
        disagree == 0,
        format!("{disagree} of {CERT_POINTS} random points disagree ({holding} with all rows holding)"),
    );
    Ok(report)
}
