//! `monconv`: run norms, inequality verifications, searches, and asymptotic
//! estimations from the command line, emitting reports and plot-ready tables.
//!
//! Exit status: 0 when every check came out Verified (or expectedly
//! Inconclusive for ratio-mode checks), 1 when anything was Violated, 2 on
//! usage errors (bad flags, malformed inputs, violated preconditions,
//! exceeded budgets).

mod commands;
mod io;

use clap::Parser;

fn main() {
    let cli = commands::Cli::parse();
    match commands::run(cli) {
        Ok(outcome) => std::process::exit(if outcome.violated > 0 { 1 } else { 0 }),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}
