//! Model files, run reports and the command implementations behind the
//! `mldual` binary.

pub mod commands;
pub mod model_file;
pub mod report;

/// Version tag written into every model file and report.
pub const FORMAT_VERSION: u32 = 1;
