//! Resource-constrained diffusion of multiple costly behaviors over social networks.
//!
//! Every node holds a fixed resource budget and an adoption threshold per behavior. In each
//! synchronous epoch a node collects the behaviors whose social signal meets its threshold and
//! whose cost it can afford, then adopts the payoff-maximizing subset that fits its budget
//! (an exact 0/1 knapsack). On top of the engine this crate provides the seed-selection
//! heuristics, the greedy spread maximizer, exact one-step adoption probabilities and the
//! analytic utilization bound.
//!
//! The crate is `no_std` and only needs `alloc`. IO, parallel experiment drivers and the
//! command-line front end live in the companion `mbdiff` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod behavior;
pub mod bounds;
pub mod diffuse;
pub mod eia;
mod error;
pub mod generate;
pub mod graph;
pub mod knapsack;
pub mod live_edge;
mod mask;
pub mod rng;
pub mod seedsel;
pub mod spread;

pub use behavior::{
    AdoptionMode, BehaviorSet, ModelParams, ThresholdMode, Thresholds, MAX_BEHAVIORS,
};
pub use diffuse::{run_diffusion, Metrics, RunOutcome, SeedAssignment};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId, Topology};
pub use mask::BehaviorMask;

/// Slack used when comparing summed costs against a budget.
pub const COST_EPS: f64 = 1e-12;
