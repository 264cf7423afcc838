use clap::Parser;

fn main() {
    let cli = bathent_cli::Cli::parse();
    if let Err(err) = bathent_cli::run(&cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
