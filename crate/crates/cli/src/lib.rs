//! File formats, reports and subcommands behind the `momentcone` binary.

pub mod commands;
pub mod format;
pub mod report;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const INVALID: i32 = 3;
    pub const NOT_GOOD: i32 = 4;
    /// Oracle disagreement or an internal consistency failure.
    pub const ORACLE: i32 = 5;
}

pub use commands::{OutputFormat, Outcome};
pub use report::Sections;
