//! The `regseq` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::factors::{count_unbordered, ScanConfig};
use crate::linrep::{tm_fixture, LinRep};
use crate::relations::{
    discover, parse_base_values, tm_conjecture_system, BaseValues, DiscoverMode, Identity, Verifier,
    VerifyOptions,
};
use crate::sequences::{Dfao, SequenceSpec};
use crate::theorems::{
    suite_period_doubling, suite_rudin_shapiro, suite_theorem1, suite_tm_conjecture_upto, suite_tm_growth,
    Report, SuiteOptions,
};

#[derive(Debug, Parser)]
#[command(name = "regseq", version, about = "Unbordered factors of automatic sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sequence generation and DFAO evaluation
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Counting unbordered factors
    #[command(subcommand)]
    Unbordered(UnborderedCommand),
    /// Linear representations
    #[command(subcommand)]
    Linrep(LinrepCommand),
    /// Kernel relations
    #[command(subcommand)]
    Relations(RelationsCommand),
    /// Theorem check suites
    #[command(subcommand)]
    Theorems(TheoremsCommand),
}

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    /// Print a prefix of a sequence as a digit string
    Gen {
        /// thue-morse, rudin-shapiro, period-doubling[:k] or dfao:PATH
        #[arg(long)]
        name: SequenceSpec,
        #[arg(long)]
        length: usize,
    },
    /// Evaluate a DFAO at n
    Eval {
        #[arg(long)]
        dfao: PathBuf,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Linrep,
}

#[derive(Debug, Subcommand)]
pub enum UnborderedCommand {
    /// Number of distinct unbordered factors of length n
    Count {
        #[arg(long)]
        name: SequenceSpec,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Linear representation for --method linrep (defaults to the bundled
        /// Thue-Morse one when --name is thue-morse)
        #[arg(long)]
        linrep: Option<PathBuf>,
    },
    /// TSV of n and the count for 0 <= n <= max
    Table {
        #[arg(long)]
        name: SequenceSpec,
        #[arg(long)]
        max: u64,
        /// Declared value for n = 0, as n=value (Thue-Morse defaults to 0=1)
        #[arg(long = "base")]
        base: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum LinrepCommand {
    /// Evaluate v M_(n)_k w
    Eval {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiscoverModeArg {
    Full,
    Subspace,
}

#[derive(Debug, Subcommand)]
pub enum RelationsCommand {
    /// Find a basis of kernel terms and the relations for the others
    Discover {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DiscoverModeArg::Full)]
        mode: DiscoverModeArg,
        /// Subspace depth for --mode subspace
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Write the system as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify one identity against a representation
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        identity: PathBuf,
        #[arg(long, default_value_t = 64)]
        numeric_extent: u64,
        /// Declared values, as n=value (repeatable)
        #[arg(long = "base")]
        base: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TmConjecture,
    TmGrowth,
    Theorem1,
    PeriodDoubling,
    RudinShapiro,
}

#[derive(Debug, Subcommand)]
pub enum TheoremsCommand {
    /// Run a suite and print one line per check
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest n checked (suite-specific default)
        #[arg(long)]
        max: Option<u64>,
        /// Perturb one input; the suite is expected to fail
        #[arg(long)]
        self_test: bool,
        /// Also write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum Outcome {
    Pass,
    CheckFailed,
}

fn sequence_base_values(name: &SequenceSpec, declared: &[String]) -> Result<BaseValues> {
    if !declared.is_empty() {
        return parse_base_values(declared.iter().map(String::as_str));
    }
    Ok(match name {
        SequenceSpec::ThueMorse => tm_conjecture_system().base_values,
        _ => BaseValues::new(),
    })
}

fn linrep_for(name: &SequenceSpec, file: Option<&PathBuf>) -> Result<LinRep> {
    match (file, name) {
        (Some(path), _) => LinRep::load(path),
        (None, SequenceSpec::ThueMorse) => Ok(tm_fixture()),
        (None, _) => Err(Error::Parse("--method linrep needs --linrep FILE for this sequence".into())),
    }
}

fn run_suite(suite: Suite, max: Option<u64>, opts: SuiteOptions) -> Report {
    match suite {
        Suite::TmConjecture => suite_tm_conjecture_upto(max.unwrap_or(4096), opts),
        Suite::TmGrowth => suite_tm_growth(max.unwrap_or(4096), 10, opts),
        Suite::Theorem1 => suite_theorem1(max.unwrap_or(2048), opts),
        Suite::PeriodDoubling => suite_period_doubling(&[2, 3, 4, 5], max.unwrap_or(150) as usize, opts),
        Suite::RudinShapiro => suite_rudin_shapiro(max.unwrap_or(200) as usize, opts),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    let io = |e: std::io::Error| Error::Io { path: "<stdout>".into(), source: e };
    match cli.command {
        Command::Seq(SeqCommand::Gen { name, length }) => {
            let s: String = name.prefix(length).iter().map(|&d| char::from(b'0' + d)).collect();
            writeln!(out, "{s}").map_err(io)?;
        }
        Command::Seq(SeqCommand::Eval { dfao, n }) => {
            let d = Dfao::load(&dfao)?;
            writeln!(out, "{}", d.eval(n)).map_err(io)?;
        }
        Command::Unbordered(UnborderedCommand::Count { name, n, method, linrep }) => {
            let value = match method {
                Method::Brute => count_unbordered(&name, n as usize, ScanConfig::from_env()?)?.to_string(),
                Method::Linrep => linrep_for(&name, linrep.as_ref())?.eval(n)?.to_string(),
            };
            writeln!(out, "{value}").map_err(io)?;
        }
        Command::Unbordered(UnborderedCommand::Table { name, max, base }) => {
            let cfg = ScanConfig::from_env()?;
            let base = sequence_base_values(&name, &base)?;
            writeln!(out, "n\tcount\tsource").map_err(io)?;
            if let Some(v) = base.get(&0) {
                writeln!(out, "0\t{v}\tbase").map_err(io)?;
            }
            for n in 1..=max {
                let c = count_unbordered(&name, n as usize, cfg)?;
                writeln!(out, "{n}\t{c}\tbrute").map_err(io)?;
            }
        }
        Command::Linrep(LinrepCommand::Eval { file, n }) => {
            writeln!(out, "{}", LinRep::load(&file)?.eval(n)?).map_err(io)?;
        }
        Command::Relations(RelationsCommand::Discover { file, mode, depth, max_len, out: path }) => {
            let rep = LinRep::load(&file)?;
            let mode = match mode {
                DiscoverModeArg::Full => DiscoverMode::FullVector,
                DiscoverModeArg::Subspace => DiscoverMode::Subspace(depth),
            };
            let system = discover(&rep, mode, max_len);
            write!(out, "{}", system.render("g")).map_err(io)?;
            if let Some(path) = path {
                system.save(path)?;
            }
        }
        Command::Relations(RelationsCommand::Verify { file, identity, numeric_extent, base, max_depth }) => {
            let rep = LinRep::load(&file)?;
            let id = Identity::load(&identity, rep.base())?;
            let base = parse_base_values(base.iter().map(String::as_str))?;
            let report = Verifier::new(&rep, base).verify(&id, VerifyOptions { numeric_extent, max_depth });
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?).map_err(io)?;
            if !report.is_verified() {
                return Ok(Outcome::CheckFailed);
            }
        }
        Command::Theorems(TheoremsCommand::Check { suite, max, self_test, json }) => {
            let opts = SuiteOptions { self_test, scan: ScanConfig::from_env()? };
            let report = run_suite(suite, max, opts);
            write!(out, "{}", report.to_text()).map_err(io)?;
            if let Some(path) = json {
                std::fs::write(&path, report.to_json() + "\n").map_err(|e| Error::Io { path, source: e })?;
            }
            if !report.passed() {
                return Ok(Outcome::CheckFailed);
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Runs the command line and returns the process exit code: 0 when every
/// check passes, 1 when a check fails, 2 on usage or input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::CheckFailed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
