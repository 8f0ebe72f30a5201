//! Command-line front end: argument parsing, config files, SVG rendering and
//! the subcommand implementations.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod svg;

use args::{Cli, Command};
pub use error::{CliError, Result};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Generate(a) => commands::generate(a),
        Command::Experiment(a) => commands::experiment(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::ScoreEdges(a) => commands::score_edges(a),
    }
}
