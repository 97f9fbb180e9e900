//! Command-line front end.
//!
//! [`run`] parses arguments, runs the requested checks and renders the
//! report; the binary only prints what it returns. Exit codes: 0 when every
//! check passes, 1 when one fails, 2 on usage, parse and domain errors.

mod file;
mod report;
mod select;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use file::{parse_algebra_file, to_json as algebra_file_to_json, AlgebraFile, Coeff, FileRing, ProductRecord, RingDescriptor, TermRecord};
pub use report::{
    CatalogEntry, CheckResult, ClosureSummary, RunReport, SimplicitySummary, Status, SubspaceSummary,
};
pub use select::{select, AlgebraArgs, CatalogName, ConventionArg, DynAlgebra};

use crate::algebra::AlgebraError;
use crate::identities::{self, IdentitySpec, RandomCheckOptions};
use crate::math::{MathError, DEFAULT_PRIME};
use crate::order::{self, OrderError, ShadowOptions};
use crate::structure;
use crate::{with_field, with_ring};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed algebra file at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("invalid algebra file: {0}")]
    Validation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("{0}")]
    Domain(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "superalg", version, about = "Exact checks on finite-dimensional algebras and superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityName {
    RightSymmetric,
    RightAlternativeSuper,
    Associative,
    Commutative,
    AbelianType,
}

impl IdentityName {
    fn spec(self) -> Option<IdentitySpec> {
        match self {
            IdentityName::RightSymmetric => Some(IdentitySpec::right_symmetric()),
            IdentityName::RightAlternativeSuper => Some(IdentitySpec::right_alternative_super()),
            IdentityName::Associative => Some(IdentitySpec::associative()),
            IdentityName::Commutative => Some(IdentitySpec::commutative()),
            IdentityName::AbelianType => None,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List catalog algebras, or describe one and optionally export it as a file.
    Catalog {
        #[arg(long, value_enum)]
        algebra: Option<CatalogName>,
        #[command(flatten)]
        params: CatalogParams,
        /// Write the algebra file JSON here.
        #[arg(long, requires = "algebra")]
        export: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check an identity on all basis tuples.
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum)]
        identity: IdentityName,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check an identity at random points over a prime field.
    RandomCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum)]
        identity: IdentityName,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Permit p = 2 or 3.
        #[arg(long)]
        allow_small_prime: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the center.
    Center {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the even part of the center of a superalgebra.
    EvenCenter {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find the two-sided unit.
    Unit {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide simplicity by ideal closure.
    Simple {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Only consider graded ideals.
        #[arg(long)]
        graded: bool,
        /// Seed of the random dense generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-verify the coefficient-extraction displays of a lemma.
    VerifyLemma {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        lemma: u8,
        /// Size for lemmas 1 and 3 [default: 2].
        #[arg(long)]
        n: Option<usize>,
        /// Case of lemma 2; both cases run by default.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        case: Option<u8>,
        /// Random evaluations per display in the modular shadow.
        #[arg(long, default_value_t = 100)]
        shadow_trials: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Parameter flags for `catalog`, where the algebra is optional.
#[derive(Debug, Clone, Args)]
struct CatalogParams {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    convention: ConventionArg,
}

/// What a run produced: the report (absent on usage errors), the exit code
/// and the text destined for standard output and standard error.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: Option<RunReport>,
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return RunOutcome {
                report: None,
                exit_code: code,
                stdout,
                stderr,
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut report = RunReport::new(echo);
    let output = cli.command.output().clone();
    let mut stderr = String::new();
    match execute(cli.command) {
        Ok(results) => {
            report.results = results;
            report.finish();
        }
        Err(e) => {
            stderr = format!("error: {e}\n");
            report.fail_with(e.to_string());
        }
    }
    let rendered = if output.json { report.to_json() } else { report.to_text() };
    let mut stdout = String::new();
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                stderr.push_str(&format!("error: {}: {e}\n", path.display()));
                report.fail_with(format!("{}: {e}", path.display()));
            }
        }
        None => stdout = rendered,
    }
    RunOutcome {
        exit_code: report.exit_code,
        report: Some(report),
        stdout,
        stderr,
    }
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Catalog { output, .. }
            | Command::Check { output, .. }
            | Command::RandomCheck { output, .. }
            | Command::Center { output, .. }
            | Command::EvenCenter { output, .. }
            | Command::Unit { output, .. }
            | Command::Simple { output, .. }
            | Command::VerifyLemma { output, .. } => output,
        }
    }
}

fn execute(cmd: Command) -> Result<Vec<CheckResult>, CliError> {
    match cmd {
        Command::Catalog {
            algebra,
            params,
            export,
            ..
        } => catalog(algebra, params, export),
        Command::Check { algebra, identity, .. } => {
            let alg = select(&algebra)?;
            let report = with_ring!(&alg, a => match identity.spec() {
                Some(id) => identities::check_multilinear_identity(a, &id)?,
                None => identities::check_abelian_type(a)?,
            });
            Ok(vec![CheckResult::Identity(report)])
        }
        Command::RandomCheck {
            algebra,
            identity,
            prime,
            trials,
            seed,
            allow_small_prime,
            ..
        } => {
            let alg = select(&algebra)?;
            let opts = RandomCheckOptions {
                prime,
                trials,
                seed,
                allow_small_prime,
            };
            let report = with_ring!(&alg, a => match identity.spec() {
                Some(id) => identities::randomized_check(a.as_ref(), &id, &opts)?,
                None => identities::randomized_abelian_type(a.as_ref(), &opts)?,
            });
            Ok(vec![CheckResult::Identity(report)])
        }
        Command::Center { algebra, .. } => {
            let alg = select(&algebra)?;
            let s = with_field!(&alg, a => SubspaceSummary::new(&structure::compute_center(a)?));
            Ok(vec![CheckResult::Center(s)])
        }
        Command::EvenCenter { algebra, .. } => {
            let alg = select(&algebra)?;
            let s = with_field!(&alg, a => SubspaceSummary::new(&structure::compute_even_center(a)?));
            Ok(vec![CheckResult::EvenCenter(s)])
        }
        Command::Unit { algebra, .. } => {
            let alg = select(&algebra)?;
            let unit = with_field!(&alg, a => structure::find_unit(a)?.map(|u| u.to_string()));
            Ok(vec![CheckResult::Unit {
                algebra: alg.name().to_string(),
                unit,
            }])
        }
        Command::Simple {
            algebra, graded, seed, ..
        } => {
            let alg = select(&algebra)?;
            if graded {
                with_ring!(&alg, a => if !a.is_graded() {
                    return Err(AlgebraError::Ungraded(a.name().to_string()).into());
                });
            }
            let s = with_field!(&alg, a => SimplicitySummary::new(a.name(), &structure::check_simple(a, graded, seed)?));
            Ok(vec![CheckResult::Simplicity(s)])
        }
        Command::VerifyLemma {
            lemma,
            n,
            case,
            shadow_trials,
            prime,
            seed,
            ..
        } => verify_lemma(lemma, n, case, ShadowOptions {
            prime,
            trials: shadow_trials,
            seed,
        }),
    }
}

fn catalog(
    algebra: Option<CatalogName>,
    p: CatalogParams,
    export: Option<PathBuf>,
) -> Result<Vec<CheckResult>, CliError> {
    let Some(name) = algebra else {
        if p.n.is_some() || p.nu.is_some() || p.w.is_some() || p.gamma.is_some() || p.delta.is_some() || p.eps.is_some()
        {
            return Err(CliError::Usage("parameter flags need --algebra".into()));
        }
        let entries = CatalogName::ALL
            .iter()
            .map(|c| CatalogEntry {
                name: c.as_str().to_string(),
                description: c.description().to_string(),
                flags: c.flags().to_string(),
            })
            .collect();
        return Ok(vec![CheckResult::Catalog { entries }]);
    };
    let args = AlgebraArgs {
        algebra: Some(name),
        file: None,
        n: p.n,
        nu: p.nu,
        w: p.w,
        gamma: p.gamma,
        delta: p.delta,
        eps: p.eps,
        convention: p.convention,
    };
    let alg = select(&args)?;
    let file = with_ring!(&alg, a => AlgebraFile::from_spec(a.as_ref()));
    if let Some(path) = export {
        std::fs::write(&path, file::to_json(&file)).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(vec![CheckResult::Algebra { file }])
}

fn verify_lemma(lemma: u8, n: Option<usize>, case: Option<u8>, opts: ShadowOptions) -> Result<Vec<CheckResult>, CliError> {
    if n.is_some() && !matches!(lemma, 1 | 3) {
        return Err(CliError::Usage(format!("--n applies to lemmas 1 and 3, not lemma {lemma}")));
    }
    if case.is_some() && lemma != 2 {
        return Err(CliError::Usage(format!("--case applies to lemma 2, not lemma {lemma}")));
    }
    let sized = |report| CheckResult::Lemma {
        n: Some(n.unwrap_or(2)),
        case: None,
        report,
    };
    let plain = |report| CheckResult::Lemma {
        n: None,
        case: None,
        report,
    };
    Ok(match lemma {
        1 => vec![sized(order::verify_lemma1(n.unwrap_or(2), &opts)?)],
        2 => {
            let cases: Vec<u8> = case.map_or(vec![1, 2], |c| vec![c]);
            let reports: Vec<Result<_, OrderError>> = {
                use rayon::prelude::*;
                cases.par_iter().map(|&c| order::verify_lemma2(c, &opts)).collect()
            };
            cases
                .iter()
                .zip(reports)
                .map(|(&c, r)| {
                    Ok(CheckResult::Lemma {
                        n: None,
                        case: Some(c),
                        report: r?,
                    })
                })
                .collect::<Result<_, CliError>>()?
        }
        3 => vec![sized(order::verify_lemma3(n.unwrap_or(2), &opts)?)],
        4 => vec![plain(order::verify_lemma4(&opts)?)],
        5 => vec![plain(order::verify_lemma5(&opts)?)],
        _ => unreachable!("clap restricts the lemma number"),
    })
}

/// Serializes a spec as an algebra file.
pub fn algebra_file_json(alg: &DynAlgebra) -> String {
    with_ring!(alg, a => file::to_json(&AlgebraFile::from_spec(a.as_ref())))
}

