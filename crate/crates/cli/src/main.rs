use clap::Parser;

fn main() {
    let cli = so42_cli::Cli::parse();
    std::process::exit(so42_cli::run(&cli));
}
