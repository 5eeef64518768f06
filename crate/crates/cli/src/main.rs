mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "maclane", version, about = "Inductive valuations, types and the Montes algorithm over Z_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// The polynomial to work on: inline or from a file (text expression or JSON coefficient array).
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct PolyInput {
    /// Polynomial in x, e.g. "x^4 - 2*(3 + 9 - 27)*x^2 + 6561"
    #[arg(long)]
    pub poly: Option<String>,
    /// File holding the polynomial
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor a monic squarefree polynomial over Z_p
    Factor {
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        input: PolyInput,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        /// Show every polygon, residual polynomial and type visited
        #[arg(long)]
        trace: bool,
        /// Require v_p(f - prod G_i) >= N when certifying
        #[arg(long, value_name = "N")]
        precision_floor: Option<i64>,
    },
    /// Decide whether two types are equivalent
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the valuations of a chain on a polynomial
    Eval {
        /// Chain or type file
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        poly: String,
        /// Levels to evaluate (default: all)
        #[arg(long)]
        level: Vec<usize>,
        /// Also print (s_i, u_i, R_i(g))
        #[arg(long)]
        residual: bool,
        #[arg(long)]
        json: bool,
    },
    /// Remove the stationary levels of a type
    Optimize {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// A representative of a type
    Representative {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status)
        }
    }
}
