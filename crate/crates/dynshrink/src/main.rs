use clap::Parser;

fn main() {
    let cli = dynshrink::cli::Cli::parse();
    if let Err(e) = dynshrink::cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
