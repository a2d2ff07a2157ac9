use clap::Parser;

fn main() {
    let cli = cha_cli::Cli::parse();
    if let Err(e) = cha_cli::run(cli) {
        eprintln!("cha: {e}");
        std::process::exit(e.exit_code());
    }
}
