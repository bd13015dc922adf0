//! Secrecy rate region of a two-user full-duplex wiretap channel.
//!
//! Two users exchange messages over a full-duplex link while a passive
//! eavesdropper listens. Both users split their power budget between a
//! message and a jamming signal. This crate finds, over a grid of rate
//! targets, the allocation minimizing the eavesdropper's information rate,
//! and from it the maximum sum secrecy rate and the achievable secrecy rate
//! region. Channel knowledge is either exact or known up to a norm-bounded
//! error per link; in the latter case every rate is worst case.
//!
//! Layers, bottom up:
//!
//! - [`model`]: scenario, allocation and solver configuration types.
//! - [`rates`]: closed-form rates, capacities and worst-case rates.
//! - [`lp`]: dense phase-one simplex feasibility kernel.
//! - [`programs`]: fixed-`t` feasibility programs and S-procedure LMI
//!   certificates.
//! - [`region`]: bisection, the rate-target sweep and the Pareto frontier.
//! - [`oracle`]: brute-force grid searches used to cross-check everything
//!   above.
//! - [`cli`]: config files, CSV output and the command-line driver.

pub mod cli;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod programs;
pub mod rates;
pub mod region;

pub use model::{
    db_to_linear, ChannelSet, Complex, ErrorBounds, Mode, ModelError, PowerAllocation, Scenario, SolverConfig,
};
pub use region::{min_eave_rate, sweep_region, RegionPoint, RegionResult};
