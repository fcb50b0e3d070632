use clap::Parser;

use gapnum_cli::cli::{dispatch, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = dispatch(cli, &mut out);
    std::process::exit(code);
}
