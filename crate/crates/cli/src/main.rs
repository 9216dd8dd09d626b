use std::process::ExitCode;

use clap::Parser;
use tropgen_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let rendered = outcome.render(cli.global.json);
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(tropgen_cli::exit::INPUT as u8);
            }
        }
        None if !outcome.is_error || cli.global.json => print!("{rendered}"),
        None => eprint!("{rendered}"),
    }
    ExitCode::from(outcome.code as u8)
}
