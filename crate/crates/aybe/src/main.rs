use clap::Parser;

fn main() {
    let cli = aybe::cli::Cli::parse();
    let mut out = std::io::stdout().lock();
    std::process::exit(aybe::cli::run(&cli, &mut out));
}
