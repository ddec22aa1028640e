use clap::Parser;

fn main() {
    let cli = rbtri::cli::Cli::parse();
    std::process::exit(rbtri::cli::run(cli));
}
