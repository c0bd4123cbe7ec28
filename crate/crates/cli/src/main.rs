use clap::Parser;
use gcditer_cli::{run, Cli, ExperimentConfig};

fn main() {
    let config = ExperimentConfig::from(Cli::parse());
    std::process::exit(run(&config));
}
