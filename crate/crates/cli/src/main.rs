//! `qlogcert` command line: certification runs, bound tables, identity checks.

mod bounds;
mod grid;
mod identity;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qlogcert::Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    fn io(e: impl std::fmt::Display) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Config(s)
    }
}

#[derive(Parser)]
#[command(name = "qlogcert", version, about = "Certify shift log-concavity of hypergeometric-type families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a theorem or explore a conjecture over a (mu, nu) grid.
    Verify(VerifyArgs),
    /// Tabulate a two-sided bound over an x grid as CSV.
    Bounds(BoundsArgs),
    /// Check one of the exact or contiguous identities.
    Identity(IdentityArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn precision_bits(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("invalid precision {s:?}"))?;
    if p < 64 {
        return Err(format!("precision must be at least 64 bits, got {p}"));
    }
    Ok(p)
}

fn positive_order(s: &str) -> Result<usize, String> {
    let m: usize = s.parse().map_err(|_| format!("invalid order {s:?}"))?;
    if m == 0 {
        return Err("order must be at least 1".into());
    }
    Ok(m)
}

#[derive(Args)]
pub struct VerifyArgs {
    /// T1..T6, or the full label such as T1_F_CONCAVE.
    #[arg(long)]
    theorem: Option<String>,
    /// C1 or C2.
    #[arg(long)]
    conjecture: Option<String>,
    /// Defaults to the theorem's own family.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    /// ones, poch:<b>, hyper:<a1,..>;<b1,..> or explicit:<f0,f1,..>
    #[arg(long, default_value = "ones")]
    sequence: String,
    /// Grid of first shifts.
    #[arg(long, visible_alias = "alpha")]
    mu: String,
    /// Grid of second shifts.
    #[arg(long, visible_alias = "beta")]
    nu: String,
    #[arg(long, default_value = "50", value_parser = positive_order)]
    order: usize,
    /// Interval precision in bits.
    #[arg(long, env = "QLOG_PRECISION", default_value = "256", value_parser = precision_bits)]
    precision: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<String>,
    /// Leave the timestamp out so identical runs give identical bytes.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum BoundsKind {
    Turan1f1,
    Logderiv,
    Envelope,
    Gaussratio,
    Cf,
    Turanian,
    Ratio,
}

#[derive(Args)]
pub struct BoundsArgs {
    #[arg(value_enum)]
    kind: BoundsKind,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    /// Needed by gaussratio and cf.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// x grid.
    #[arg(long)]
    x: String,
    /// Needed by turanian and ratio.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "1")]
    mu: String,
    #[arg(long, default_value_t = 1)]
    nu: usize,
    #[arg(long, default_value = "ones")]
    sequence: String,
    /// cf: truncate after this many partial quotients.
    #[arg(long)]
    depth: Option<usize>,
    /// cf: close the fraction periodically from this index.
    #[arg(long)]
    periodic: Option<usize>,
    #[arg(long, env = "QLOG_PRECISION", default_value = "128", value_parser = precision_bits)]
    precision: u32,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum IdentityKind {
    Kummer,
    Gosper,
    Contiguous,
}

#[derive(Args)]
pub struct IdentityArgs {
    #[arg(value_enum)]
    kind: IdentityKind,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, default_value = "0")]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, default_value_t = 6)]
    m: usize,
    #[arg(long, default_value = "50", value_parser = positive_order)]
    order: usize,
    #[arg(long, env = "QLOG_PRECISION", default_value = "128", value_parser = precision_bits)]
    precision: u32,
}

pub fn open_output(path: Option<&str>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) if p != "-" => Box::new(BufWriter::new(File::create(Path::new(p)).map_err(CliError::io)?)),
        _ => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn timestamp() -> String {
    humantime::format_rfc3339_seconds(std::time::SystemTime::now()).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => verify::run(args),
        Command::Bounds(args) => bounds::run(args),
        Command::Identity(args) => identity::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
