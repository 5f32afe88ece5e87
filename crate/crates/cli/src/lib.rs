//! Command-line surface over the exact density-of-states library.
//!
//! Every command is deterministic given its flags (`montecarlo` given its
//! seed). Tables are emitted as locale-independent CSV (`.` decimal point,
//! `,` delimiter, header row) or as JSON reports carrying a config echo,
//! per-check status and numeric residuals.
//!
//! Exit status: 0 on success, 1 when a verification fails (or I/O fails),
//! 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod output;
pub mod report;

/// Exact microcanonical density of states: tables, identities, asymptotics.
#[derive(Debug, Parser)]
#[command(name = "statedos", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of stdout. Relative paths resolve under
    /// $STATEDOS_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Output format (default: csv; verify-all defaults to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Significant digits when rendering exact rationals.
    #[arg(long, global = true, default_value_t = 30)]
    pub precision_digits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the exact density mu(E) of the (n+1)-level linear spectrum
    /// on a uniform grid over [0, 1].
    Density {
        /// Level count minus one.
        #[arg(long)]
        n: usize,
        /// Grid points including both endpoints.
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Emit the three-curve comparison (n = 3, 6, 9) on a shared grid.
    Figure1 {
        #[arg(long, default_value_t = 501)]
        points: usize,
    },
    /// Verify that mu integrates to exactly 1 for every n up to max-n.
    Normalize {
        #[arg(long, default_value_t = 50)]
        max_n: usize,
    },
    /// Verify the alternating binomial identity sum C(n,k)(-1)^k k^n = (-1)^n n!.
    Identity {
        #[arg(long, default_value_t = 120)]
        max_n: usize,
    },
    /// Tabulate omega_J(alpha) with float projections and the max-term
    /// cancellation diagnostic.
    OmegaSeries {
        /// Rational alpha >= 2, written p/q (e.g. 5/2).
        #[arg(long, default_value = "5/2")]
        alpha: String,
        /// Largest J; the grid is every multiple of q up to jmax.
        #[arg(long, default_value_t = 40)]
        jmax: u64,
    },
    /// Extrapolate omega_J(2)/sqrt(J) to J -> infinity.
    Richardson {
        #[arg(long, default_value_t = 64)]
        jmax: u64,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Solve the saddle-point equation f'(lambda) = 0 and report the
    /// predicted asymptotics.
    Saddle {
        /// Rational alpha >= 2, written p/q.
        #[arg(long, default_value = "3")]
        alpha: String,
    },
    /// Sample pure states, histogram the energy expectation and compare
    /// density.
    Montecarlo {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 100)]
        bins: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Sup-norm pass threshold on bin-averaged density.
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
    },
    /// Run the full verification battery and emit a report.
    VerifyAll {
        #[arg(long, default_value_t = 50)]
        max_n: usize,
        #[arg(long, default_value_t = 64)]
        jmax: u64,
        /// Tolerance for the Richardson-constant check.
        #[arg(long, default_value_t = 1e-6)]
        richardson_tol: f64,
    },
}

/// What a command produced: the rendered table/report, whether every
/// embedded check passed, and an optional one-line summary for stderr.
#[derive(Debug)]
pub struct CommandOutput {
    pub content: String,
    pub passed: bool,
    pub summary: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values; exits 2 like a parse error.
    Usage(String),
    /// Runtime failure (solver, I/O); exits 1.
    Run(String),
}

impl From<statedos::Error> for CliError {
    fn from(err: statedos::Error) -> Self {
        match err {
            statedos::Error::Parameter(_)
            | statedos::Error::Domain(_)
            | statedos::Error::DegenerateSpectrum(_)
            | statedos::Error::InsufficientData(_) => CliError::Usage(err.to_string()),
            other => CliError::Run(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Run(format!("i/o error: {err}"))
    }
}

/// Dispatch a parsed command line; the caller writes the output and maps
/// the result to an exit code.
pub fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::VerifyAll { .. } => Format::Json,
        _ => Format::Csv,
    });
    let digits = cli.precision_digits;
    if digits == 0 {
        return Err(CliError::Usage(
            "--precision-digits must be positive".into(),
        ));
    }
    match &cli.command {
        Command::Density { n, points } => commands::density(*n, *points, format, digits),
        Command::Figure1 { points } => commands::figure1(*points, format, digits),
        Command::Normalize { max_n } => commands::normalize(*max_n, format),
        Command::Identity { max_n } => commands::identity(*max_n, format),
        Command::OmegaSeries { alpha, jmax } => {
            commands::omega_series(alpha, *jmax, format, digits)
        }
        Command::Richardson { jmax, order } => commands::richardson(*jmax, *order, format),
        Command::Saddle { alpha } => commands::saddle(alpha, format),
        Command::Montecarlo {
            n,
            samples,
            bins,
            seed,
            tolerance,
        } => commands::montecarlo(*n, *samples, *bins, *seed, *tolerance, format, digits),
        Command::VerifyAll {
            max_n,
            jmax,
            richardson_tol,
        } => commands::verify_all(*max_n, *jmax, *richardson_tol, format),
    }
}

/// Full pipeline: run, write, exit code.
pub fn run_to_exit_code(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(out) => {
            if let Some(summary) = &out.summary {
                eprintln!("{summary}");
            }
            match output::emit(cli.output.as_deref(), &out.content) {
                Ok(Some(path)) => eprintln!("wrote {}", path.display()),
                Ok(None) => {}
                Err(err) => {
                    eprintln!("error: i/o failure: {err}");
                    return 1;
                }
            }
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
