//! quadscan: single-d omega queries, class-group queries, theorem
//! verification, and free-form journaled range scans.
//!
//! Exit codes: 0 success/match, 1 verification mismatch, 2 usage or domain
//! error, 3 resource error. Configuration precedence: flags, then QS_*
//! environment variables, then defaults.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::Format;
use quadscan_core::arith::ArithError;
use quadscan_core::classgroup::{
    self, class_group_structure, fundamental_unit, fundamental_unit_pm4,
    reduced_forms_imaginary, ClassGroupError, QuadDiscriminant,
};
use quadscan_core::omega::{self, FrVariant, OmegaQuery, Parity, Sign};
use quadscan_core::scan::{
    self, DFilter, ResidueClass, ScanError, ScanJob, ScanOptions, ScanProfile, Shape,
};
use quadscan_core::verify;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quadscan",
    about = "Omega profiles of d±x², quadratic class groups, and reproducible theorem searches",
    long_about = None,
    version
)]
struct Cli {
    /// Output format for record-like results
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads for scans (0 = all cores). Env: QS_WORKERS. Default: 0
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Sieve limit override (values above it fall back to trial division).
    /// Env: QS_SIEVE_LIMIT. Default: sized from the scan bound
    #[arg(long, global = true)]
    sieve_limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrVariantArg {
    ImagOdd,
    ImagEven,
    Real,
}

impl From<FrVariantArg> for FrVariant {
    fn from(v: FrVariantArg) -> Self {
        match v {
            FrVariantArg::ImagOdd => FrVariant::ImagOdd,
            FrVariantArg::ImagEven => FrVariant::ImagEven,
            FrVariantArg::Real => FrVariant::Real,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    MOdd,
    MEven,
    MEvenReal,
    MAll,
    FrImagOdd,
    FrImagEven,
    FrReal,
}

impl From<ProfileArg> for ScanProfile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::MOdd => ScanProfile::MOdd,
            ProfileArg::MEven => ScanProfile::MEven,
            ProfileArg::MEvenReal => ScanProfile::MEvenReal,
            ProfileArg::MAll => ScanProfile::MAllFromZero,
            ProfileArg::FrImagOdd => ScanProfile::Fr(FrVariant::ImagOdd),
            ProfileArg::FrImagEven => ScanProfile::Fr(FrVariant::ImagEven),
            ProfileArg::FrReal => ScanProfile::Fr(FrVariant::Real),
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    /// Lowest d (inclusive)
    #[arg(long)]
    lo: Option<u64>,
    /// Highest d (inclusive)
    #[arg(long)]
    hi: Option<u64>,
    /// Profile to evaluate per d
    #[arg(long, value_enum)]
    profile: Option<ProfileArg>,
    /// Pass when the profile max is <= this threshold
    #[arg(long, default_value_t = 2)]
    threshold: u32,
    /// Filter entries: mod=M:R1[,R2..], squarefree=yes|no,
    /// shape=prime|pq|prime-or-pq|neither|any, min=N (repeatable)
    #[arg(long = "filter")]
    filter: Vec<String>,
    /// Chunk size in d per work unit
    #[arg(long, default_value_t = 4096)]
    chunk_size: u64,
    /// Journal file (jsonl records plus chunk markers)
    #[arg(long)]
    journal: Option<PathBuf>,
    /// Resume an interrupted journaled scan
    #[arg(long, default_value_t = false)]
    resume: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Max omega(d ± x²) over a parity-filtered x range
    Omega {
        d: u64,
        #[arg(long, value_enum, default_value_t = ParityArg::Odd)]
        parity: ParityArg,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[arg(long, default_value_t = 1)]
        xmin: u64,
    },
    /// Class number, elementary divisors and reduced forms of an imaginary
    /// discriminant
    Classgroup {
        #[arg(allow_hyphen_values = true)]
        discriminant: i64,
    },
    /// Class number of a real discriminant by cycle counting
    Realclass { discriminant: i64 },
    /// Fundamental unit of Z[sqrt(d)] (and of the maximal order for
    /// d = 1 mod 4)
    Unit { d: u64 },
    /// Frobenius-Rabinowitsch criterion for one d
    Fr {
        d: u64,
        #[arg(long, value_enum)]
        variant: FrVariantArg,
    },
    /// Reproduce a theorem/conjecture list by exhaustive bounded search
    Verify {
        id: String,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Scan a range of d for profile-passing values
    Scan(#[command(flatten)] ScanArgs),
    /// List the built-in theorem and conjecture specs
    ListTheorems,
}

/// Errors mapped to exit codes 2 (usage/domain) and 3 (resource).
#[derive(Debug)]
enum CliError {
    Domain(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<omega::OmegaError> for CliError {
    fn from(e: omega::OmegaError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ClassGroupError> for CliError {
    fn from(e: ClassGroupError) -> Self {
        match e {
            ClassGroupError::EnumerationCap(..) => CliError::Resource(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::SieveTooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Sieve(inner) => inner.into(),
            ScanError::Journal(_) => CliError::Resource(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<verify::VerifyError> for CliError {
    fn from(e: verify::VerifyError) -> Self {
        match e {
            verify::VerifyError::Scan(inner) => inner.into(),
            verify::VerifyError::ClassGroup(inner) => inner.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.parse().ok()
}

fn scan_options(cli: &Cli) -> ScanOptions {
    let workers = cli
        .workers
        .or_else(|| env_u64("QS_WORKERS").map(|v| v as usize))
        .unwrap_or(0);
    let sieve_limit = cli.sieve_limit.or_else(|| env_u64("QS_SIEVE_LIMIT"));
    ScanOptions { workers, sieve_limit, max_chunks: None }
}

fn parse_filter(entries: &[String]) -> Result<DFilter, CliError> {
    let mut f = DFilter::default();
    for entry in entries {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| CliError::Domain(format!("filter entry '{entry}' is not key=value")))?;
        match key {
            "mod" => {
                let (m, rs) = value.split_once(':').ok_or_else(|| {
                    CliError::Domain(format!("mod filter '{value}' is not M:R1[,R2..]"))
                })?;
                let modulus: u64 = m
                    .parse()
                    .map_err(|_| CliError::Domain(format!("bad modulus '{m}'")))?;
                if modulus == 0 {
                    return Err(CliError::Domain("modulus must be positive".into()));
                }
                let remainders = rs
                    .split(',')
                    .map(|r| r.parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Domain(format!("bad remainder list '{rs}'")))?;
                f.residue = Some(ResidueClass { modulus, remainders });
            }
            "squarefree" => {
                f.squarefree = Some(match value {
                    "yes" | "true" => true,
                    "no" | "false" => false,
                    _ => {
                        return Err(CliError::Domain(format!(
                            "squarefree must be yes or no, got '{value}'"
                        )))
                    }
                });
            }
            "shape" => {
                f.shape = match value {
                    "prime" => Shape::Prime,
                    "pq" => Shape::TwoDistinctPrimes,
                    "prime-or-pq" => Shape::PrimeOrTwoDistinctPrimes,
                    "neither" => Shape::NeitherPrimeNorTwoDistinctPrimes,
                    "any" => Shape::Any,
                    _ => return Err(CliError::Domain(format!("unknown shape '{value}'"))),
                };
            }
            "min" => {
                f.min_d = value
                    .parse()
                    .map_err(|_| CliError::Domain(format!("bad min '{value}'")))?;
            }
            _ => return Err(CliError::Domain(format!("unknown filter key '{key}'"))),
        }
    }
    Ok(f)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let opts = scan_options(cli);
    match &cli.command {
        Command::Omega { d, parity, sign, xmin } => {
            let query = OmegaQuery {
                d: *d,
                sign: match sign {
                    SignArg::Plus => Sign::Plus,
                    SignArg::Minus => Sign::Minus,
                },
                parity: match parity {
                    ParityArg::Odd => Parity::Odd,
                    ParityArg::Even => Parity::Even,
                    ParityArg::All => Parity::All,
                },
                x_min: *xmin,
            };
            let report = omega::omega_profile(&query, None)?;
            output::print_omega(cli.format, &query, &report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Classgroup { discriminant } => {
            let disc = QuadDiscriminant::new(*discriminant)?;
            disc.require_imaginary()?;
            let structure = class_group_structure(&disc)?;
            let forms = reduced_forms_imaginary(&disc)?;
            output::print_classgroup(cli.format, &structure, &forms);
            Ok(ExitCode::SUCCESS)
        }
        Command::Realclass { discriminant } => {
            let disc = QuadDiscriminant::new(*discriminant)?;
            let h = classgroup::class_number_real(&disc)?;
            output::print_realclass(cli.format, disc.value(), h);
            Ok(ExitCode::SUCCESS)
        }
        Command::Unit { d } => {
            let pell = fundamental_unit(*d)?;
            let half = if d % 4 == 1 {
                Some(fundamental_unit_pm4(*d)?)
            } else {
                None
            };
            output::print_unit(cli.format, &pell, half.as_ref());
            Ok(ExitCode::SUCCESS)
        }
        Command::Fr { d, variant } => {
            let holds = omega::fr_check(*d, (*variant).into())?;
            output::print_fr(cli.format, *d, (*variant).into(), holds);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { id, bound } => {
            let spec = verify::lookup(id)?;
            let report = verify::verify(&spec, *bound, &opts)?;
            output::print_verification(cli.format, &report);
            if report.matched {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Scan(args) => {
            let outcome = if args.resume {
                let path = args.journal.as_ref().ok_or_else(|| {
                    CliError::Domain("--resume requires --journal PATH".into())
                })?;
                let resumed = scan::resume(path)?;
                resumed.run(&opts)?
            } else {
                let (Some(lo), Some(hi), Some(profile)) = (args.lo, args.hi, args.profile) else {
                    return Err(CliError::Domain(
                        "scan requires --lo, --hi and --profile (or --resume --journal PATH)"
                            .into(),
                    ));
                };
                let job = ScanJob {
                    lo,
                    hi,
                    profile: profile.into(),
                    threshold: args.threshold,
                    filter: parse_filter(&args.filter)?,
                    chunk_size: args.chunk_size,
                    journal_path: args.journal.clone(),
                };
                scan::scan(&job, &opts)?
            };
            output::print_records(cli.format, &outcome.records);
            Ok(ExitCode::SUCCESS)
        }
        Command::ListTheorems => {
            let specs = verify::builtin_theorems();
            output::print_theorem_list(cli.format, &specs);
            Ok(ExitCode::SUCCESS)
        }
    }
}
