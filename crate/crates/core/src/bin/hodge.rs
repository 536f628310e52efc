use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hodge_core::cli::{
    cmd_curve, cmd_diagonal, cmd_ordinary, cmd_projective, cmd_snc, error_output, CurveConfig, Format, Output,
    DEFAULT_KMAX,
};
use hodge_core::jet::DEFAULT_CAP;
use hodge_core::Error;

/// Hodge ideals of plane curves, closed forms, and projective checks.
#[derive(Parser)]
#[command(name = "hodge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hodge ideals I_0..I_kmax of a plane curve at its singular points.
    Curve {
        /// The equation, e.g. "x^2+y^3".
        equation: String,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: u32,
        /// Analyse this point only, e.g. "1/2,-1".
        #[arg(long)]
        point: Option<String>,
        /// Variable names, e.g. "u,v".
        #[arg(long)]
        vars: Option<String>,
        /// Upper limit on the jet truncation.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        #[command(flatten)]
        common: Common,
    },
    /// I_k of the normal crossing divisor x1*...*xr = 0 in n variables.
    Snc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        common: Common,
    },
    /// I_k at an ordinary singular point of multiplicity m in dimension n.
    Ordinary {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Triviality range for x1^a1 + ... + xn^an.
    Diagonal {
        #[arg(required = true)]
        exponents: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Checks on a projective hypersurface described by a JSON file.
    Projective {
        file: PathBuf,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        #[command(flatten)]
        common: Common,
    },
}

fn format(common: &Common) -> Format {
    if common.json {
        Format::Json
    } else {
        Format::Text
    }
}

fn run(cli: Cli) -> Output {
    match cli.command {
        Command::Curve { equation, kmax, point, vars, cap, common } => {
            cmd_curve(&CurveConfig { equation, vars, kmax, point, cap }, format(&common))
        }
        Command::Snc { n, r, k, common } => cmd_snc(n, r, k, format(&common)),
        Command::Ordinary { n, m, k, common } => cmd_ordinary(n, m, k, format(&common)),
        Command::Diagonal { exponents, common } => cmd_diagonal(&exponents, format(&common)),
        Command::Projective { file, kmax, cap, common } => match std::fs::read_to_string(&file) {
            Ok(text) => cmd_projective(&text, kmax, cap, format(&common)),
            Err(e) => error_output(&Error::Input(format!("{}: {e}", file.display())), format(&common)),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version exit cleanly
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out = run(cli);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
