use clap::Parser;
use conic_pencil_cli::{args::Cli, run};

fn main() {
    let outcome = run(Cli::parse());
    print!("{}", outcome.stdout);
    if let Some(e) = &outcome.error {
        eprintln!("{}", e.line());
    }
    std::process::exit(outcome.exit_code());
}
