//! Command-line front end: argument parsing, dispatch and exit codes.

pub mod commands;
pub mod eval;
pub mod output;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sylwave::combinatorics::cache::{load_caches, save_current_caches};
use sylwave::{Error, PrecisionContext};

use crate::eval::Opts;
use crate::output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sylwave", version, about = "Sylvester waves, dilogarithm zeros and saddle-point expansions")]
pub struct Cli {
    /// Working precision in decimal digits (at least 30).
    #[arg(long, global = true, env = "SYLWAVE_DIGITS", default_value_t = 60)]
    pub digits: u32,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also compute wave cells with N >= 1500.
    #[arg(long, global = true)]
    pub slow: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Directory for the Bernoulli and partition tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Rerun at doubled precision and fail (exit 3) on disagreement.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Significant figures to print (capped at digits - 10).
    #[arg(long, global = true)]
    pub sig: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The wave W_k(N,n), or its polynomials with --poly.
    Wave(WaveArgs),
    /// The sum of the first K waves.
    WavesSum(WavesSumArgs),
    /// The partition number p(n).
    Pn(PnArgs),
    /// p_N(n), partitions of n into at most N parts (extended to all integers n).
    Prestricted(NnArgs),
    /// The dilogarithm zero w(A,B).
    DilogZero(DilogZeroArgs),
    /// The saddle point z(m,d) and the phase value there.
    Saddle(SaddleArgs),
    /// Growth and oscillation constants of the first wave.
    Constants(ConstantsArgs),
    /// Coefficients of a saddle-point expansion family.
    Coeffs(CoeffsArgs),
    /// Value of a saddle-point expansion truncated after m terms.
    Asym(AsymArgs),
    /// A residue sum over one Farey class.
    Classsum(ClassSumArgs),
    /// Check the decomposition of the first 100 waves into class sums.
    Identity(NnArgs),
    /// Reproduce a published table.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct WaveArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long = "N")]
    pub big_n: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// auto, residue_sum, series_at_roots, power_sums, closed_small or glaisher_w1.
    #[arg(long, default_value = "auto")]
    pub route: String,
    /// Print the exact polynomial in n for each residue class of n mod k.
    #[arg(long)]
    pub poly: bool,
}

#[derive(Args, Debug)]
pub struct WavesSumArgs {
    #[arg(long = "N")]
    pub big_n: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long = "K", default_value_t = 100)]
    pub kmax: u64,
}

#[derive(Args, Debug)]
pub struct PnArgs {
    #[arg(long)]
    pub n: u64,
    /// Also print the Hardy-Ramanujan-Rademacher sum with this many terms.
    #[arg(long)]
    pub hrr: Option<u64>,
}

#[derive(Args, Debug)]
pub struct NnArgs {
    #[arg(long = "N")]
    pub big_n: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
}

#[derive(Args, Debug)]
pub struct DilogZeroArgs {
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: i64,
}

#[derive(Args, Debug)]
pub struct SaddleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    /// a, c, c_star, d_odd, d_even or e.
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
}

#[derive(Args, Debug)]
pub struct AsymArgs {
    /// a, c, c_star, d (parity of N picks d_odd or d_even), d_odd, d_even or e.
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long = "N")]
    pub big_n: u64,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
}

#[derive(Args, Debug)]
pub struct ClassSumArgs {
    /// A, B, C, C2, C2star, D, E or first_waves.
    #[arg(long)]
    pub class: String,
    #[arg(long = "N")]
    pub big_n: u64,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "n")]
    pub sigma: Option<i64>,
    /// Shorthand for sigma = -n.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Number of waves for the first_waves class.
    #[arg(long = "K", default_value_t = 100)]
    pub kmax: u64,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// first_wave_sizes, pn_vs_w1, w1_approx, a1_approx, c2_approx, c2star_approx,
    /// d1_approx, e1_approx, pn2n, w2_conjecture or w1_ratio.
    pub id: String,
    /// Row values (N or n): a list such as 1200,1203 or 275..700:5.
    #[arg(long)]
    pub rows: Option<String>,
    /// Comma-separated lambda values such as 1/3,1,2.
    #[arg(long, allow_hyphen_values = true)]
    pub lambdas: Option<String>,
    /// Comma-separated numbers of expansion terms.
    #[arg(long)]
    pub m: Option<String>,
    /// w1_ratio: use the exact rational first wave.
    #[arg(long)]
    pub exact: bool,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_precision() || matches!(e, Error::Convergence(_) | Error::Overflow(_)) {
        EXIT_PRECISION
    } else {
        EXIT_USAGE
    }
}

/// Parses `argv`, runs the command and writes its output; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&cli) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            EXIT_OK
        }
        Err(Failure { output, error }) => {
            if let Some(text) = output {
                let _ = stdout.write_all(text.as_bytes());
                let _ = stdout.flush();
            }
            eprintln!("sylwave: {error}");
            exit_code(&error)
        }
    }
}

/// An error, with any output that should still be printed (a failed identity report).
pub struct Failure {
    pub output: Option<String>,
    pub error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Self { output: None, error }
    }
}

/// Runs the parsed command and returns the rendered output.
pub fn run(cli: &Cli) -> Result<String, Failure> {
    if let Some(t) = cli.threads {
        // Fails only when a global pool already exists, which then stays in use.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    if let Some(dir) = &cli.cache_dir {
        load_caches(dir)?;
    }
    let opts = Opts { ctx: PrecisionContext::new(cli.digits)?, verify: cli.verify, slow: cli.slow, sig: cli.sig };
    let out = commands::dispatch(&cli.command, &opts).map_err(|f| Failure {
        output: f.report.map(|r| r.render(cli.format)),
        error: f.error,
    })?;
    if let Some(dir) = &cli.cache_dir {
        save_current_caches(dir)?;
    }
    Ok(out.render(cli.format))
}
