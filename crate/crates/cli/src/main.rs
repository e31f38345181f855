//! `taureg`: command-line front end for the taureg-core library.
//!
//! Exit codes: 0 success, 1 a built-in example failed, 2 parse/build/input
//! error, 3 module violates the relations, 4 ideal does not annihilate the
//! module, 10 scan found additivity violations.

mod commands;
mod examples;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use taureg_core::field::set_prime;
use taureg_core::{Error, Fp, Q};

#[derive(Parser, Debug)]
#[command(name = "taureg", version, about = "Maximal ranks, AR translates and tau-regularity for bound quiver algebras")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Field: `q` for the rationals or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// Random draws per rank estimate.
    #[arg(long, global = true, default_value_t = 8)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Largest t for `scan`.
    #[arg(long, global = true, default_value_t = 4)]
    pub tmax: usize,
    /// Cap for projective dimension searches.
    #[arg(long, global = true, default_value_t = 10)]
    pub cap: usize,
    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of the algebra and of its projectives and injectives.
    Info { algebra: PathBuf },
    /// Hierarchy flags, projective dimension, E-invariants and the tau-regularity verdict.
    Check { algebra: PathBuf, module: PathBuf },
    /// Scan r(P1^t, P0^t) for t = 1..tmax.
    Scan {
        algebra: PathBuf,
        /// Multiplicities of P1, comma separated, one per vertex.
        #[arg(long, value_delimiter = ',')]
        p1: Vec<usize>,
        /// Multiplicities of P0.
        #[arg(long, value_delimiter = ',')]
        p0: Vec<usize>,
    },
    /// Compare a module over A and over A/I (I the annihilator unless --ideal is given).
    Reduce {
        algebra: PathBuf,
        module: PathBuf,
        /// File of ideal generators, one per line.
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    /// Replay the built-in fixture table.
    PaperExamples,
    /// dim Hom(M, N) and a sampled lower bound for r(M, N).
    Hom { algebra: PathBuf, m: PathBuf, n: PathBuf },
    /// The AR translate of a module, as a module file.
    Tau {
        algebra: PathBuf,
        module: PathBuf,
        /// Compute the inverse translate instead.
        #[arg(long)]
        minus: bool,
    },
    /// dim Ext^1(M, N) next to the stable Hom side of the AR formula.
    Ext1 { algebra: PathBuf, m: PathBuf, n: PathBuf },
}

/// Writes a line to stdout; a closed pipe (`taureg ... | head`) is not an error.
pub fn out(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::RelationViolation(_)) => 3,
        Some(Error::NotAnnihilating) => 4,
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<u8> {
    if let Command::PaperExamples = cli.command {
        return examples::run(&cli.opts);
    }
    let field = cli.opts.field.trim().to_ascii_lowercase();
    if field == "q" {
        commands::run::<Q>(cli)
    } else if let Some(p) = field.strip_prefix("fp:") {
        let p: u64 = p.parse().map_err(|_| anyhow!("bad prime `{p}`"))?;
        set_prime(p).map_err(|e| anyhow!(e))?;
        commands::run::<Fp>(cli)
    } else {
        Err(anyhow!("unknown field `{}` (expected q or fp:<prime>)", cli.opts.field))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
