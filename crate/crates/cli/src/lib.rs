//! Experiment runner for `tt-optima`: random TT-tensors, benchmark functions
//! on Chebyshev grids, and beam-width studies, written as CSV or JSON.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use config::{Experiment, ExperimentConfig, OutputFormat, SizeRange};
pub use error::{CliError, Result};
pub use experiments::{run, Report, Rows};
