use clap::Parser;

fn main() {
    let cli = zxcodes::cli::Cli::parse();
    if let Err(err) = zxcodes::cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
