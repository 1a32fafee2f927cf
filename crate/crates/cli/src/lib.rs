//! Front end for the kernel library: grid sweeps, region maps, scenario
//! reports and the oracle self-test. The `dyncasimir` binary is a thin
//! clap layer over these functions.

pub mod error;
pub mod output;
pub mod regions;
pub mod scenario;
pub mod selftest;
pub mod sweep;

pub use error::{exit, CliError};
