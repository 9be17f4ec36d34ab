use clap::Parser;

fn main() {
    let cli = pathdp::cli::Cli::parse();
    if let Err(e) = pathdp::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
