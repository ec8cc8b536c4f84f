//! Command-line surface: `count`, `enumerate`, `verify`, `primes`.
//!
//! Results go to the writer handed to [`run`]; errors are returned to the
//! caller, which prints them on stderr.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bitgrid::{BoardLayout, DEFAULT_FEASIBILITY_BOUND};
use crate::error::Result;
use crate::matrix::Dims;
use crate::oracles::{brute_force_classes, burnside_count};
use crate::orbits::{write_report, Enumerator, RecordFormat};
use crate::sieve::primes_by_sieve;

/// `verify` runs the brute-force oracle only up to this many cells.
pub const VERIFY_BRUTE_FORCE_CELLS: usize = 16;

pub const MAX_MN_ENV: &str = "MDSIEVE_MAX_MN";

#[derive(Debug, Parser)]
#[command(
    name = "mdsieve",
    version,
    about = "Count and list Boolean matrices up to cyclic row and column rotation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the number of classes as `classes=<N>`.
    Count(MatrixArgs),
    /// Write one representative per class.
    Enumerate {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// `tuple` for record lines only, `matrix` to also print each representative.
        #[arg(long, default_value_t = RecordFormat::Tuple)]
        format: RecordFormat,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the sieve count with the Burnside and brute-force oracles.
    Verify(MatrixArgs),
    /// Print the primes up to `--limit`, one per line.
    Primes {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct MatrixArgs {
    #[arg(short = 'm', long)]
    pub rows: usize,
    #[arg(short = 'n', long)]
    pub cols: usize,
    /// Largest accepted rows*cols.
    #[arg(long, env = MAX_MN_ENV, default_value_t = DEFAULT_FEASIBILITY_BOUND)]
    pub max_mn: usize,
}

impl MatrixArgs {
    pub fn layout(&self) -> Result<BoardLayout> {
        BoardLayout::with_bound(Dims::new(self.rows, self.cols)?, self.max_mn)
    }
}

/// How a successful command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// `verify` found disagreeing counts.
    Mismatch,
}

pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<Status> {
    match &cli.command {
        Command::Count(args) => cmd_count(&args.layout()?, out).map(|_| Status::Ok),
        Command::Enumerate {
            matrix,
            format,
            out: path,
        } => {
            let layout = matrix.layout()?;
            match path {
                Some(path) => cmd_enumerate_to_file(&layout, *format, path),
                None => cmd_enumerate(&layout, *format, out),
            }
            .map(|_| Status::Ok)
        }
        Command::Verify(args) => cmd_verify(&args.layout()?, out),
        Command::Primes { limit } => cmd_primes(*limit, out).map(|_| Status::Ok),
    }
}

fn sieve_count(layout: &BoardLayout) -> Result<u64> {
    let summary = Enumerator::new(*layout).stream(|_| Ok::<_, std::convert::Infallible>(()))?;
    Ok(summary.class_count)
}

pub fn cmd_count<W: Write>(layout: &BoardLayout, out: &mut W) -> Result<u64> {
    let classes = sieve_count(layout)?;
    writeln!(out, "classes={classes}")?;
    Ok(classes)
}

pub fn cmd_enumerate<W: Write>(layout: &BoardLayout, format: RecordFormat, out: &mut W) -> Result<u64> {
    let report = Enumerator::new(*layout).enumerate()?;
    write_report(out, &report, format)?;
    out.flush()?;
    Ok(report.class_count)
}

pub fn cmd_enumerate_to_file(layout: &BoardLayout, format: RecordFormat, path: &Path) -> Result<u64> {
    let mut file = BufWriter::new(File::create(path)?);
    let classes = cmd_enumerate(layout, format, &mut file)?;
    file.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    Ok(classes)
}

pub fn cmd_verify<W: Write>(layout: &BoardLayout, out: &mut W) -> Result<Status> {
    let dims = layout.dims();
    let sieve = sieve_count(layout)?;
    let burnside = burnside_count(dims)?.total;
    let brute = if dims.cells() <= VERIFY_BRUTE_FORCE_CELLS {
        Some(brute_force_classes(dims)?.class_count)
    } else {
        None
    };

    let agree = u128::from(sieve) == burnside && brute.is_none_or(|b| b == sieve);
    let brute_field = brute.map_or_else(|| "skipped".to_owned(), |b| b.to_string());
    let status = if agree { "ok" } else { "MISMATCH" };
    writeln!(out, "sieve={sieve} burnside={burnside} brute={brute_field} status={status}")?;
    Ok(if agree { Status::Ok } else { Status::Mismatch })
}

pub fn cmd_primes<W: Write>(limit: u64, out: &mut W) -> Result<usize> {
    let primes = primes_by_sieve(limit)?;
    for p in &primes {
        writeln!(out, "{p}")?;
    }
    Ok(primes.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(m: usize, n: usize) -> BoardLayout {
        BoardLayout::new(Dims::new(m, n).unwrap()).unwrap()
    }

    fn output<F: FnOnce(&mut Vec<u8>)>(f: F) -> String {
        let mut buf = Vec::new();
        f(&mut buf);
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn count_lines() {
        assert_eq!(output(|o| { cmd_count(&layout(2, 2), o).unwrap(); }), "classes=7\n");
        assert_eq!(output(|o| { cmd_count(&layout(1, 1), o).unwrap(); }), "classes=2\n");
        assert_eq!(output(|o| { cmd_count(&layout(3, 3), o).unwrap(); }), "classes=64\n");
    }

    #[test]
    fn enumerate_tuple_and_matrix() {
        let text = output(|o| {
            cmd_enumerate(&layout(1, 1), RecordFormat::Tuple, o).unwrap();
        });
        assert_eq!(text, "# rows=1 cols=1 classes=2\n1\t1\t0\n2\t1\t1\n");

        let text = output(|o| {
            cmd_enumerate(&layout(2, 2), RecordFormat::Tuple, o).unwrap();
        });
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "# rows=2 cols=2 classes=7");
        assert_eq!(lines[1], "1\t1\t0,0");
        assert_eq!(lines.len(), 8);

        let text = output(|o| {
            cmd_enumerate(&layout(2, 2), RecordFormat::Matrix, o).unwrap();
        });
        assert!(text.starts_with("# rows=2 cols=2 classes=7\n1\t1\t0,0\n00\n00\n"));
        assert!(text.ends_with("7\t1\t3,3\n11\n11\n"));
    }

    #[test]
    fn verify_lines() {
        assert_eq!(
            output(|o| {
                assert_eq!(cmd_verify(&layout(2, 2), o).unwrap(), Status::Ok);
            }),
            "sieve=7 burnside=7 brute=7 status=ok\n"
        );
        assert_eq!(
            output(|o| {
                cmd_verify(&layout(1, 1), o).unwrap();
            }),
            "sieve=2 burnside=2 brute=2 status=ok\n"
        );
        assert_eq!(
            output(|o| {
                cmd_verify(&layout(4, 4), o).unwrap();
            }),
            "sieve=4156 burnside=4156 brute=4156 status=ok\n"
        );
        assert_eq!(
            output(|o| {
                cmd_verify(&layout(3, 6), o).unwrap();
            }),
            "sieve=14624 burnside=14624 brute=skipped status=ok\n"
        );
    }

    #[test]
    fn primes_lines() {
        assert_eq!(output(|o| { cmd_primes(10, o).unwrap(); }), "2\n3\n5\n7\n");
        assert_eq!(output(|o| { cmd_primes(2, o).unwrap(); }), "2\n");
        assert_eq!(output(|o| { cmd_primes(100, o).unwrap(); }).lines().count(), 25);
        assert!(cmd_primes(1, &mut Vec::new()).is_err());
    }
}
