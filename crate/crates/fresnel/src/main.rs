use std::io::{BufWriter, Write};

use clap::Parser;

fn main() {
    let cli = fresnel::cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = fresnel::cli::run(cli, &mut out);
    out.flush().ok();
    std::process::exit(code);
}
