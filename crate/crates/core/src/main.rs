use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use mdsieve::cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Status::Ok), Ok(())) => ExitCode::SUCCESS,
        (Ok(Status::Mismatch), Ok(())) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
