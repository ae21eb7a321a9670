//! JSON/CSV wire formats, the `horoclif` command-line front end and the
//! seeded verification suites for [`horoclif_core`].

pub mod commands;
mod error;
pub mod output;
pub mod suites;
pub mod wire;

pub use commands::{Format, RandomKind, Report, RunConfig};
pub use error::CliError;

/// Environment variable that lowers the dimension cap.
pub const DIM_CAP_VAR: &str = "HOROCLIF_DIM_CAP";

/// Dimension cap from `HOROCLIF_DIM_CAP`, defaulting to and bounded by 12.
pub fn dim_cap(var: Option<&str>) -> Result<usize, CliError> {
    let Some(v) = var else { return Ok(horoclif_core::MAX_DIM) };
    match v.trim().parse::<usize>() {
        Ok(c) if c <= horoclif_core::MAX_DIM => Ok(c),
        _ => Err(CliError::input(format!("{DIM_CAP_VAR} must be an integer in 0..={}", horoclif_core::MAX_DIM))),
    }
}
