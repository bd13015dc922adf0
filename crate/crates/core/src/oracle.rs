//! Brute-force reference searches over power grids and CSI-error grids.
//!
//! Nothing here calls into the closed forms or the solvers; each search
//! evaluates the signal model directly so it can ground-truth them.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::model::{Complex, PowerAllocation, Scenario};

/// Evenly spaced points on an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub density: usize,
    /// With endpoints the points are `lo + i (hi - lo) / (n - 1)`; without,
    /// they are cell midpoints.
    pub includes_endpoints: bool,
}

impl GridSpec {
    pub fn new(density: usize) -> Self {
        assert!(density >= 2, "grid density must be at least 2");
        Self {
            density,
            includes_endpoints: true,
        }
    }

    pub fn midpoints(density: usize) -> Self {
        Self {
            includes_endpoints: false,
            ..Self::new(density)
        }
    }

    /// The grid containing this one with every interval halved.
    pub fn refined(&self) -> Self {
        Self {
            density: if self.includes_endpoints {
                2 * self.density - 1
            } else {
                3 * self.density
            },
            ..*self
        }
    }

    pub fn points(&self, lo: f64, hi: f64) -> Vec<f64> {
        let n = self.density;
        let w = hi - lo;
        if self.includes_endpoints {
            (0..n)
                .map(|i| {
                    if i + 1 == n {
                        hi
                    } else {
                        lo + w * i as f64 / (n - 1) as f64
                    }
                })
                .collect()
        } else {
            (0..n).map(|i| lo + w * (i as f64 + 0.5) / n as f64).collect()
        }
    }
}

/// Polar grid over a complex error disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorGrid {
    pub magnitude: GridSpec,
    pub phases: usize,
}

impl ErrorGrid {
    pub fn new(magnitudes: usize, phases: usize) -> Self {
        assert!(phases >= 1);
        Self {
            magnitude: GridSpec::new(magnitudes),
            phases,
        }
    }

    pub fn refined(&self) -> Self {
        Self {
            magnitude: self.magnitude.refined(),
            phases: 2 * self.phases,
        }
    }

    /// Error samples in the disc of radius `eps`. Phases start at `anchor`,
    /// so with an even phase count both `anchor` and `anchor + pi` are hit.
    pub fn samples(&self, eps: f64, anchor: f64) -> Vec<Complex> {
        if eps == 0.0 {
            return vec![Complex::new(0.0, 0.0)];
        }
        let mags = self.magnitude.points(0.0, eps);
        let mut out = Vec::with_capacity(mags.len() * self.phases);
        for &m in &mags {
            if m == 0.0 {
                out.push(Complex::new(0.0, 0.0));
                continue;
            }
            for k in 0..self.phases {
                let phi = anchor + 2.0 * PI * k as f64 / self.phases as f64;
                out.push(Complex::from_polar(m, phi));
            }
        }
        out
    }
}

impl Default for ErrorGrid {
    fn default() -> Self {
        Self::new(100, 64)
    }
}

fn log_rate(num: f64, den: f64) -> f64 {
    (1.0 + num / den).log2()
}

/// `(message, jamming)` pairs on the grid within a budget.
fn budget_pairs(grid: &GridSpec, budget: f64) -> Vec<(f64, f64)> {
    let pts = grid.points(0.0, budget);
    let cap = budget * (1.0 + 1e-12);
    let mut out = Vec::new();
    for &s in &pts {
        for &n in &pts {
            if s + n <= cap {
                out.push((s, n));
            }
        }
    }
    out
}

/// Largest nominal sum secrecy rate over a 4-D power grid.
pub fn brute_force_sum_secrecy(scenario: &Scenario, grid: &GridSpec) -> (f64, PowerAllocation) {
    let ch = &scenario.channels;
    let n0 = scenario.n0;
    let g21 = ch.h21.norm_sqr();
    let g12 = ch.h12.norm_sqr();
    let z1 = ch.z1.norm_sqr();
    let z2 = ch.z2.norm_sqr();
    let user1: Vec<_> = budget_pairs(grid, scenario.p1)
        .into_iter()
        .map(|(s, n)| (s, n, log_rate(g21 * s, n0 + g21 * n)))
        .collect();
    let user2: Vec<_> = budget_pairs(grid, scenario.p2)
        .into_iter()
        .map(|(s, n)| (s, n, log_rate(g12 * s, n0 + g12 * n)))
        .collect();

    user1
        .par_iter()
        .map(|&(p1s, p1n, r1)| {
            let mut best = (f64::NEG_INFINITY, PowerAllocation::ZERO);
            for &(p2s, p2n, r2) in &user2 {
                let re = log_rate(z1 * p1s + z2 * p2s, n0 + z1 * p1n + z2 * p2n);
                let v = (r1 + r2 - re).max(0.0);
                if v > best.0 {
                    best = (v, PowerAllocation::new(p1s, p1n, p2s, p2n));
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, PowerAllocation::ZERO),
            |a, b| if b.0 > a.0 { b } else { a },
        )
}

/// Smallest nominal leakage rate over grid allocations meeting both rate
/// targets, or `None` when no grid point qualifies.
pub fn grid_min_eave(
    scenario: &Scenario,
    r1_target: f64,
    r2_target: f64,
    grid: &GridSpec,
) -> Option<(f64, PowerAllocation)> {
    let ch = &scenario.channels;
    let n0 = scenario.n0;
    let g21 = ch.h21.norm_sqr();
    let g12 = ch.h12.norm_sqr();
    let z1 = ch.z1.norm_sqr();
    let z2 = ch.z2.norm_sqr();
    let meets = |g: f64, target: f64| move |&(s, n): &(f64, f64)| log_rate(g * s, n0 + g * n) >= target - 1e-12;
    let user1: Vec<_> = budget_pairs(grid, scenario.p1)
        .into_iter()
        .filter(meets(g21, r1_target))
        .collect();
    let user2: Vec<_> = budget_pairs(grid, scenario.p2)
        .into_iter()
        .filter(meets(g12, r2_target))
        .collect();

    let mut best: Option<(f64, PowerAllocation)> = None;
    for &(p1s, p1n) in &user1 {
        for &(p2s, p2n) in &user2 {
            let re = log_rate(z1 * p1s + z2 * p2s, n0 + z1 * p1n + z2 * p2n);
            if best.is_none_or(|(b, _)| re < b) {
                best = Some((re, PowerAllocation::new(p1s, p1n, p2s, p2n)));
            }
        }
    }
    best
}

/// Smallest rate on one legitimate link over gridded errors: the link error
/// over its disc (magnitude x phase, phases anchored on `-h0`) and the
/// self-interference residual over its magnitude range.
#[allow(clippy::too_many_arguments)]
pub fn grid_min_link_rate(
    h0: Complex,
    eps_link: f64,
    eps_self: f64,
    ps: f64,
    pn: f64,
    p_other_total: f64,
    n0: f64,
    grid: &ErrorGrid,
) -> f64 {
    let anchor = (-h0).arg();
    let links = grid.samples(eps_link, anchor);
    let selfs: Vec<f64> = if eps_self == 0.0 {
        vec![0.0]
    } else {
        grid.magnitude.points(0.0, eps_self)
    };
    let mut worst = f64::INFINITY;
    for e in &links {
        let g = (h0 + e).norm_sqr();
        for &m in &selfs {
            let r = log_rate(g * ps, n0 + m * m * p_other_total + g * pn);
            worst = worst.min(r);
        }
    }
    worst
}

/// Largest leakage rate at `alloc` over gridded eavesdropper errors. The
/// same error multiplies message and jamming terms of its user.
pub fn grid_max_eave_rate(scenario: &Scenario, alloc: &PowerAllocation, grid: &ErrorGrid) -> f64 {
    let ch = &scenario.channels;
    let e = &scenario.errors;
    let g1: Vec<f64> = grid
        .samples(e.eps1, ch.z1.arg())
        .iter()
        .map(|d| (ch.z1 + d).norm_sqr())
        .collect();
    let g2: Vec<f64> = grid
        .samples(e.eps2, ch.z2.arg())
        .iter()
        .map(|d| (ch.z2 + d).norm_sqr())
        .collect();
    let n0 = scenario.n0;
    let best_sinr = g1
        .par_iter()
        .map(|&a| {
            let mut m = 0.0f64;
            for &b in &g2 {
                let num = a * alloc.p1s + b * alloc.p2s;
                let den = n0 + a * alloc.p1n + b * alloc.p2n;
                m = m.max(num / den);
            }
            m
        })
        .reduce(|| 0.0, f64::max);
    (1.0 + best_sinr).log2()
}
