//! Generation, measurement, verification and plotting of reduced spherical
//! polygons, behind the `spherigon` command-line tool.

pub mod cli;
pub mod error;
pub mod grid;
pub mod measure;
pub mod plot;
pub mod report;
pub mod verify;

pub use error::{exit, CliError, Result};
pub use grid::SweepGrid;
pub use report::{CheckRecord, VerificationReport};
pub use verify::{run_suite, Suite, VerifyOptions};
