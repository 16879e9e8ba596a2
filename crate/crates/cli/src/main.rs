use clap::Parser;

fn main() {
    let cli = kickwalk_cli::Cli::parse();
    if let Err(e) = kickwalk_cli::run(cli) {
        eprintln!("kickwalk: {e}");
        std::process::exit(e.exit_code());
    }
}
