use clap::Parser;

fn main() {
    let cli = gausslab::cli::Cli::parse();
    std::process::exit(gausslab::cli::run(&cli));
}
