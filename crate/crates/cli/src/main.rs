use clap::Parser;

fn main() {
    let cli = omnilie_cli::Cli::parse();
    std::process::exit(omnilie_cli::run(cli));
}
