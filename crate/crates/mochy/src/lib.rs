//! Command-line tooling for `mochy-core`: edge-list IO, CSV/JSON output,
//! run manifests and the `mochy` binary's subcommands.

pub mod cli;
pub mod io;
pub mod output;
