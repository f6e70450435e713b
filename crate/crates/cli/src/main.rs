mod args;
mod bench;
mod commands;
mod failure;
mod imageio;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Embed(a) => commands::embed(a),
        Command::Extract(a) => commands::extract(a),
        Command::Compare(a) => commands::compare(a),
        Command::Bench(a) => bench::bench(a),
        Command::Corpus(a) => commands::write_corpus(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("iwtstego: {e:#}");
            ExitCode::from(failure::exit_code(&e))
        }
    }
}
