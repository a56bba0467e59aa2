use clap::Parser;

fn main() {
    let cli = terasim::cli::Cli::parse();
    std::process::exit(terasim::cli::run(cli));
}
