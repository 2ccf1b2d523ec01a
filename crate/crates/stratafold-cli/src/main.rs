use clap::Parser;

fn main() {
    let cli = stratafold_cli::Cli::parse();
    std::process::exit(stratafold_cli::execute(&cli));
}
