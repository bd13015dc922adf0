//! Closed-form rates, capacities and worst-case rates (bits per channel use).

use crate::model::{Complex, PowerAllocation, Scenario};

/// Achieved rates of both users and the leakage rate at the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTriple {
    pub r1: f64,
    pub r2: f64,
    pub re: f64,
}

/// Link capacities at full budget. Under imperfect CSI `c1`/`c2` are worst
/// case over the error ball and `ce` is best case for the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityTriple {
    pub c1: f64,
    pub c2: f64,
    pub ce: f64,
}

/// `min |h + e|^2` over `|e| <= eps`.
pub fn shrunk_gain_sq(h: Complex, eps: f64) -> f64 {
    let m = (h.norm() - eps).max(0.0);
    m * m
}

/// `max |h + e|^2` over `|e| <= eps`.
pub fn grown_gain_sq(h: Complex, eps: f64) -> f64 {
    let m = h.norm() + eps;
    m * m
}

/// `log2(1 + g*ps / (n0 + g*pn))`.
pub fn link_rate(gain_sq: f64, ps: f64, pn: f64, n0: f64) -> f64 {
    if ps == 0.0 || gain_sq == 0.0 {
        return 0.0;
    }
    (1.0 + gain_sq * ps / (n0 + gain_sq * pn)).log2()
}

/// Leakage rate at the eavesdropper, which sees both messages and both
/// jamming signals.
pub fn eave_rate(z1_sq: f64, z2_sq: f64, alloc: &PowerAllocation, n0: f64) -> f64 {
    let num = z1_sq * alloc.p1s + z2_sq * alloc.p2s;
    if num == 0.0 {
        return 0.0;
    }
    let den = n0 + z1_sq * alloc.p1n + z2_sq * alloc.p2n;
    (1.0 + num / den).log2()
}

/// Nominal rates (estimates taken as exact) at `alloc`.
pub fn nominal_rates(scenario: &Scenario, alloc: &PowerAllocation) -> RateTriple {
    let ch = &scenario.channels;
    RateTriple {
        r1: link_rate(ch.h21.norm_sqr(), alloc.p1s, alloc.p1n, scenario.n0),
        r2: link_rate(ch.h12.norm_sqr(), alloc.p2s, alloc.p2n, scenario.n0),
        re: eave_rate(ch.z1.norm_sqr(), ch.z2.norm_sqr(), alloc, scenario.n0),
    }
}

/// Capacities with the whole budget spent on the message.
///
/// With `robust` set, the legitimate links use the smallest gain in their
/// error ball, `max(|h0| - eps, 0)^2`, and the eavesdropper links the
/// largest, `(|z0| + eps)^2`.
pub fn capacities(scenario: &Scenario, robust: bool) -> CapacityTriple {
    let ch = &scenario.channels;
    let e = &scenario.errors;
    let (g21, g12, gz1, gz2) = if robust {
        (
            shrunk_gain_sq(ch.h21, e.eps21),
            shrunk_gain_sq(ch.h12, e.eps12),
            grown_gain_sq(ch.z1, e.eps1),
            grown_gain_sq(ch.z2, e.eps2),
        )
    } else {
        (ch.h21.norm_sqr(), ch.h12.norm_sqr(), ch.z1.norm_sqr(), ch.z2.norm_sqr())
    };
    let full = PowerAllocation::new(scenario.p1, 0.0, scenario.p2, 0.0);
    CapacityTriple {
        c1: link_rate(g21, scenario.p1, 0.0, scenario.n0),
        c2: link_rate(g12, scenario.p2, 0.0, scenario.n0),
        ce: eave_rate(gz1, gz2, &full, scenario.n0),
    }
}

/// Exact minimum over the error balls of the rate on one legitimate link,
/// with the residual self-interference treated as noise.
///
/// `g -> a*g / (c + b*g)` is nondecreasing for nonnegative `a, b, c`, so the
/// minimum sits at the smallest link gain and the largest self-interference
/// residual.
pub fn worst_case_link_rate(
    h0: Complex,
    eps_link: f64,
    eps_self: f64,
    ps: f64,
    pn: f64,
    p_other_total: f64,
    n0: f64,
) -> f64 {
    let g = shrunk_gain_sq(h0, eps_link);
    link_rate(g, ps, pn, n0 + eps_self * eps_self * p_other_total)
}

/// Upper bound on the worst-case leakage obtained by bounding message and
/// jamming terms separately: largest gains on the message powers, smallest
/// gains on the jamming powers.
pub fn worst_case_eave_rate_upper(scenario: &Scenario, alloc: &PowerAllocation) -> f64 {
    let ch = &scenario.channels;
    let e = &scenario.errors;
    let num = grown_gain_sq(ch.z1, e.eps1) * alloc.p1s + grown_gain_sq(ch.z2, e.eps2) * alloc.p2s;
    if num == 0.0 {
        return 0.0;
    }
    let den = scenario.n0 + shrunk_gain_sq(ch.z1, e.eps1) * alloc.p1n + shrunk_gain_sq(ch.z2, e.eps2) * alloc.p2n;
    (1.0 + num / den).log2()
}

/// Worst-case rates of both users at `alloc` under the scenario's error
/// bounds.
pub fn worst_case_rates(scenario: &Scenario, alloc: &PowerAllocation) -> (f64, f64) {
    let ch = &scenario.channels;
    let e = &scenario.errors;
    let r1 = worst_case_link_rate(
        ch.h21,
        e.eps21,
        e.eps22,
        alloc.p1s,
        alloc.p1n,
        alloc.p2s + alloc.p2n,
        scenario.n0,
    );
    let r2 = worst_case_link_rate(
        ch.h12,
        e.eps12,
        e.eps11,
        alloc.p2s,
        alloc.p2n,
        alloc.p1s + alloc.p1n,
        scenario.n0,
    );
    (r1, r2)
}
