mod cli;

use clap::Parser;

fn main() {
    let args = cli::Cli::parse();
    if let Err(e) = cli::commands::run(args) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
