//! Problem-instance types shared by every solver layer.
//!
//! Powers are linear throughout the library; dB only appears at the CLI
//! boundary via [`db_to_linear`].

use num_complex::Complex64;
use thiserror::Error;

/// Complex channel gain.
pub type Complex = Complex64;

/// Relative slack used when checking allocation invariants.
pub const ALLOC_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("noise power must be positive (n0 = {0})")]
    NonPositiveNoise(f64),
    #[error("power budget must be positive ({name} = {value})")]
    NonPositiveBudget { name: &'static str, value: f64 },
    #[error("error bound negative ({name} = {value})")]
    NegativeErrorBound { name: &'static str, value: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid solver config: {0}")]
    Config(&'static str),
}

/// Channel gains (or their estimates under imperfect CSI).
///
/// `h11` and `h22` are the self-interference links; after cancellation only
/// the residual error bounds `eps11`/`eps22` matter, so these two never enter
/// a rate formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSet {
    pub h11: Complex,
    pub h12: Complex,
    pub h21: Complex,
    pub h22: Complex,
    pub z1: Complex,
    pub z2: Complex,
}

impl ChannelSet {
    fn named(&self) -> [(&'static str, Complex); 6] {
        [
            ("h11", self.h11),
            ("h12", self.h12),
            ("h21", self.h21),
            ("h22", self.h22),
            ("z1", self.z1),
            ("z2", self.z2),
        ]
    }
}

/// Absolute-value bounds on the CSI errors. All zero means perfect CSI.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorBounds {
    pub eps11: f64,
    pub eps12: f64,
    pub eps21: f64,
    pub eps22: f64,
    pub eps1: f64,
    pub eps2: f64,
}

impl ErrorBounds {
    pub fn uniform(eps: f64) -> Self {
        Self {
            eps11: eps,
            eps12: eps,
            eps21: eps,
            eps22: eps,
            eps1: eps,
            eps2: eps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.named().iter().all(|(_, v)| *v == 0.0)
    }

    /// The common value if all six bounds are equal.
    pub fn as_uniform(&self) -> Option<f64> {
        let v = self.eps11;
        self.named().iter().all(|(_, x)| *x == v).then_some(v)
    }

    pub(crate) fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("eps11", self.eps11),
            ("eps12", self.eps12),
            ("eps21", self.eps21),
            ("eps22", self.eps22),
            ("eps1", self.eps1),
            ("eps2", self.eps2),
        ]
    }
}

/// A full problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub channels: ChannelSet,
    pub errors: ErrorBounds,
    /// Linear power budget of user 1.
    pub p1: f64,
    /// Linear power budget of user 2.
    pub p2: f64,
    pub n0: f64,
}

impl Scenario {
    /// The numeric scenario used for the published region plots: the four
    /// estimated gains, `N0 = 1`, equal budgets of `power_db` dB and a
    /// uniform error bound. The self-interference estimates are not
    /// published and are set to zero.
    pub fn reference(power_db: f64, eps: f64) -> Self {
        let p = db_to_linear(power_db);
        Self {
            channels: ChannelSet {
                h11: Complex::new(0.0, 0.0),
                h12: Complex::new(0.5054, -0.1449),
                h21: Complex::new(-0.0878, 1.0534),
                h22: Complex::new(0.0, 0.0),
                z1: Complex::new(0.1187, -0.2135),
                z2: Complex::new(0.1268, 0.2882),
            },
            errors: ErrorBounds::uniform(eps),
            p1: p,
            p2: p,
            n0: 1.0,
        }
    }

    pub fn with_errors(mut self, errors: ErrorBounds) -> Self {
        self.errors = errors;
        self
    }

    pub fn with_budgets(mut self, p1: f64, p2: f64) -> Self {
        self.p1 = p1;
        self.p2 = p2;
        self
    }

    /// Checks every invariant and returns the scenario unchanged on success.
    pub fn validate(self) -> Result<Self, ModelError> {
        for (name, g) in self.channels.named() {
            if !(g.re.is_finite() && g.im.is_finite()) {
                return Err(ModelError::NonFinite(name));
            }
        }
        for (name, value) in self.errors.named() {
            if !value.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
            if value < 0.0 {
                return Err(ModelError::NegativeErrorBound { name, value });
            }
        }
        for (name, value) in [("p1", self.p1), ("p2", self.p2)] {
            if !value.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
            if value <= 0.0 {
                return Err(ModelError::NonPositiveBudget { name, value });
            }
        }
        if !self.n0.is_finite() {
            return Err(ModelError::NonFinite("n0"));
        }
        if self.n0 <= 0.0 {
            return Err(ModelError::NonPositiveNoise(self.n0));
        }
        Ok(self)
    }
}

/// Message and jamming powers of both users.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PowerAllocation {
    pub p1s: f64,
    pub p1n: f64,
    pub p2s: f64,
    pub p2n: f64,
}

impl PowerAllocation {
    pub const ZERO: Self = Self {
        p1s: 0.0,
        p1n: 0.0,
        p2s: 0.0,
        p2n: 0.0,
    };

    pub fn new(p1s: f64, p1n: f64, p2s: f64, p2n: f64) -> Self {
        Self { p1s, p1n, p2s, p2n }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p1s, self.p1n, self.p2s, self.p2n]
    }

    /// Whether the allocation respects sign and budget constraints within
    /// a relative tolerance `tol`.
    pub fn is_valid_for(&self, scenario: &Scenario, tol: f64) -> bool {
        let neg = -tol * scenario.p1.max(scenario.p2);
        self.as_array().iter().all(|p| p.is_finite() && *p >= neg)
            && self.p1s + self.p1n <= scenario.p1 * (1.0 + tol)
            && self.p2s + self.p2n <= scenario.p2 * (1.0 + tol)
    }

    /// Clamps tiny negative components produced by finite-precision solvers.
    pub fn clamped(self) -> Self {
        Self {
            p1s: self.p1s.max(0.0),
            p1n: self.p1n.max(0.0),
            p2s: self.p2s.max(0.0),
            p2n: self.p2n.max(0.0),
        }
    }
}

/// Which channel knowledge the solvers assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Estimates are exact; error bounds are ignored.
    Perfect,
    /// Worst case over the error balls.
    Robust,
}

impl Mode {
    pub fn is_robust(self) -> bool {
        self == Mode::Robust
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Perfect => "perfect",
            Mode::Robust => "robust",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "perfect" => Ok(Mode::Perfect),
            "robust" => Ok(Mode::Robust),
            other => Err(format!("unknown mode '{other}' (expected perfect or robust)")),
        }
    }
}

/// Knobs for the sweep, the bisection and the oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Number of intervals on the user-1 rate axis.
    pub grid_k: usize,
    /// Number of intervals on the user-2 rate axis.
    pub grid_l: usize,
    /// Bisection stops once the bracket is no wider than this.
    pub zeta: f64,
    pub feas_tol: f64,
    /// Points per axis of the brute-force power grid.
    pub oracle_power_grid: usize,
    /// Magnitude points per error ball in the error-grid oracles.
    pub oracle_error_grid: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_k: 40,
            grid_l: 40,
            zeta: 1e-6,
            feas_tol: 1e-9,
            oracle_power_grid: 40,
            oracle_error_grid: 100,
        }
    }
}

impl SolverConfig {
    pub fn with_grid(mut self, k: usize, l: usize) -> Self {
        self.grid_k = k;
        self.grid_l = l;
        self
    }

    pub fn validate(self) -> Result<Self, ModelError> {
        if self.grid_k < 1 || self.grid_l < 1 {
            return Err(ModelError::Config("grid sizes must be at least 1"));
        }
        if !(self.zeta > 0.0 && self.zeta.is_finite()) {
            return Err(ModelError::Config("zeta must be positive"));
        }
        if !(self.feas_tol > 0.0 && self.feas_tol.is_finite()) {
            return Err(ModelError::Config("feasibility tolerance must be positive"));
        }
        if self.oracle_power_grid < 2 || self.oracle_error_grid < 2 {
            return Err(ModelError::Config("oracle grids need at least 2 points"));
        }
        Ok(self)
    }
}

pub fn db_to_linear(p_db: f64) -> f64 {
    10f64.powf(p_db / 10.0)
}
