//! File formats, configuration and parallel Monte Carlo experiments on top of
//! [`mbdiff_core`].

pub mod config;
pub mod experiment;
pub mod io;
pub mod report;
pub mod stats;

pub use config::{Averaging, ConfigError, Experiment, ExperimentConfig};
pub use experiment::{run_experiment, ExperimentResult, RunError, RunRecord};
