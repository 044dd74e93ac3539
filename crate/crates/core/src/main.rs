use clap::Parser;

use symplectic_census::cli::{main_with, Cli};

fn main() {
    std::process::exit(main_with(Cli::parse()));
}
