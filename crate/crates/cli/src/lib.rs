//! Command-line front end: TOML run configs, output directories and exit
//! codes (0 pass, 1 violation or non-convergence, 2 configuration error).

// `!(x >= 0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod json;
pub mod run;

pub use config::{parse_config, Mode, RunConfig};
pub use run::{list_registry, run, Outcome, RunError, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};
