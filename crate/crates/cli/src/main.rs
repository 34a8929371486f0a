//! `ijac`: Jacobian groups, spanning-tree counts and growth constants of
//! I-graphs from the command line.
//!
//! Exit codes: 0 success, 1 internal consistency failure, 2 usage error,
//! 3 numeric precision failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ijac_core::DEFAULT_PRECISION_BITS;

use ijac_cli::commands::{self, parse_range, JacobianChoice, NRange, TreeChoice};
use ijac_cli::table::{self, Format, Which};

#[derive(Parser)]
#[command(name = "ijac", version, about = "Jacobians and spanning trees of I-graphs I(n,k,l)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobian (critical) group of I(n,k,l)
    Jacobian {
        /// Single n or inclusive range a..b
        #[arg(long, value_parser = parse_range)]
        n: NRange,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        /// Defaults to laplacian for n <= 60 and companion above
        #[arg(long, value_enum)]
        method: Option<JacobianArg>,
        /// One JSON record per line
        #[arg(long)]
        json: bool,
    },
    /// Number of spanning trees of I(n,k,l)
    Trees {
        #[arg(long, value_parser = parse_range)]
        n: NRange,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        /// Defaults to kirchhoff for n <= 60 and resultant above
        #[arg(long, value_enum)]
        method: Option<TreeArg>,
        /// Working precision of the chebyshev method, in bits
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(24..=1_000_000))]
        precision: u32,
        #[arg(long)]
        json: bool,
    },
    /// Growth constant A_{k,l} by root product and by quadrature
    Asymptotic {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(24..=1_000_000))]
        precision: u32,
        /// Also report tau(n) (k^2 + l^2) / (n A^n) at this n
        #[arg(long)]
        ratio_at: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate a reference table
    Table {
        #[arg(long, value_enum)]
        which: WhichArg,
        /// Output file; standard output if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum JacobianArg {
    Companion,
    Laplacian,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeArg {
    Kirchhoff,
    Resultant,
    Chebyshev,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    #[value(name = "A")]
    A,
    Jac23,
    Jac34,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

fn run_table(which: WhichArg, out: Option<PathBuf>, format: FormatArg) -> i32 {
    let which = match which {
        WhichArg::A => Which::Constants,
        WhichArg::Jac23 => Which::Jac23,
        WhichArg::Jac34 => Which::Jac34,
    };
    let format = match format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let text = match table::render(which, format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match out {
        Some(path) => match std::fs::write(&path, text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                1
            }
        },
        None => {
            print!("{text}");
            0
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Jacobian { n, k, l, method, json } => {
            let choice = match method {
                None => JacobianChoice::Auto,
                Some(JacobianArg::Companion) => JacobianChoice::Companion,
                Some(JacobianArg::Laplacian) => JacobianChoice::Laplacian,
                Some(JacobianArg::Both) => JacobianChoice::Both,
            };
            commands::cmd_jacobian(n, k, l, choice, json).exit_code()
        }
        Command::Trees { n, k, l, method, precision, json } => {
            let choice = match method {
                None => TreeChoice::Auto,
                Some(TreeArg::Kirchhoff) => TreeChoice::Kirchhoff,
                Some(TreeArg::Resultant) => TreeChoice::Resultant,
                Some(TreeArg::Chebyshev) => TreeChoice::Chebyshev,
                Some(TreeArg::All) => TreeChoice::All,
            };
            commands::cmd_trees(n, k, l, choice, precision, json).exit_code()
        }
        Command::Asymptotic { k, l, precision, ratio_at, json } => {
            commands::cmd_asymptotic(k, l, precision, ratio_at, json).exit_code()
        }
        Command::Table { which, out, format } => run_table(which, out, format),
    };
    ExitCode::from(code as u8)
}
