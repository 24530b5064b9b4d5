//! `formlab`: capture numbers, capture graphs, and character-sum
//! experiments over odd finite fields, from one binary.
//!
//! Run `formlab --help` for the subcommand list; every subcommand
//! documents its flags.  All reports embed the version, the parsed
//! config, and the seed, and `--reproducible` makes runs byte-identical.

mod args;
mod run;

use clap::Parser;

fn main() {
    let cfg = args::RunConfig::parse();
    std::process::exit(run::run(&cfg));
}
