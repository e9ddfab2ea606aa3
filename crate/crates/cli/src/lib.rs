//! Library side of the `dynachrome` command-line tool: graph loading, the
//! coloring document format, experiment reports and the two experiments.

pub mod commands;
pub mod document;
pub mod error;
pub mod experiments;
pub mod input;
pub mod report;
pub mod scan;

pub use error::CliError;
