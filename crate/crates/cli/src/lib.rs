//! Library half of the `nary-ell` binary. The subcommands live in
//! [`commands`]; everything returns an [`Output`] carrying both the text
//! rendering and the JSON envelope so tests can assert on either.

pub mod cli;
pub mod commands;
pub mod sieve;

pub use cli::{Cli, Cmd, Common, Format};
pub use commands::{run, CliError, CommandResult, Output};
