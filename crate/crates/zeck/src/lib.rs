//! IO, file formats and the `zeck` command line on top of `zeck-core`.
//!
//! * [`spec_io`] reads coefficient lists as text (`2 3 1`) or JSON.
//! * [`dto`] holds the JSON report shapes.
//! * [`tables`] writes the CSV schemas.
//! * [`verify`] is the oracle matrix behind `zeck verify --all`.
//! * [`cli`] parses arguments and dispatches.

pub mod cli;
pub mod dto;
pub mod render;
pub mod spec_io;
pub mod tables;
pub mod verify;
