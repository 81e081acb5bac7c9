use clap::Parser;
use fundseq_cli::app::{run, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}
