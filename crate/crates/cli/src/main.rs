use clap::Parser;
use statedos_cli::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(statedos_cli::run_to_exit_code(&cli));
}
