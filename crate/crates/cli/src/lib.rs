//! File formats, crease-pattern drawing, the classification pipeline and
//! the verbs behind the `polyfold` binary.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod svg;
pub mod table;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;
