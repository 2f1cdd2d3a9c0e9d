//! Command line front end: JSON spec documents, report serialization and
//! the `arrvar` subcommands.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;

pub use commands::{run, Cli, Outcome};
pub use document::{parse_document, SpecDocument};
pub use error::CliError;
