//! Building a catalog algebra or loading a file from command-line flags.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};

use super::file::parse_algebra_file;
use super::CliError;
use crate::algebra::AlgebraSpec;
use crate::catalog::{self, OperatorConvention, WMatrix};
use crate::math::{Field, Fp, Polynomial, Rational, RationalFunction, ScalarExpr, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CatalogName {
    #[value(name = "matrix-rs")]
    MatrixRs,
    #[value(name = "rs-v2m2")]
    RsV2m2,
    #[value(name = "b-nn")]
    Bnn,
    #[value(name = "b-22")]
    B22,
    #[value(name = "b-44")]
    B44,
}

impl CatalogName {
    pub const ALL: [CatalogName; 5] = [
        CatalogName::MatrixRs,
        CatalogName::RsV2m2,
        CatalogName::Bnn,
        CatalogName::B22,
        CatalogName::B44,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::MatrixRs => "matrix-rs",
            CatalogName::RsV2m2 => "rs-v2m2",
            CatalogName::Bnn => "b-nn",
            CatalogName::B22 => "b-22",
            CatalogName::B44 => "b-44",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CatalogName::MatrixRs => "F^n + M_n(F), right-symmetric, dimension n + n^2",
            CatalogName::RsV2m2 => "V_2 + M_2(F) built from a bilinear table and a Hadamard mask, dimension 6",
            CatalogName::Bnn => "B_{n|n}, right-alternative superalgebra of abelian type, dimension n|n",
            CatalogName::B22 => "B_{2|2}(nu), right-alternative superalgebra of abelian type, dimension 2|2",
            CatalogName::B44 => "B_{4|4}(w), right-alternative superalgebra on M_2(F), dimension 4|4",
        }
    }

    pub fn flags(self) -> &'static str {
        match self {
            CatalogName::MatrixRs | CatalogName::Bnn => "--n N (N >= 2, default 2)",
            CatalogName::RsV2m2 => "--gamma, --delta, --eps (4 entries each), --convention rows|columns",
            CatalogName::B22 => "--nu X (default symbolic nu)",
            CatalogName::B44 => "--w a,b,c,d (row-major, tr(w) != 0, default symbolic w11,w12,w21,w22)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ConventionArg {
    #[default]
    Rows,
    Columns,
}

impl From<ConventionArg> for OperatorConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Rows => OperatorConvention::Rows,
            ConventionArg::Columns => OperatorConvention::Columns,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    /// Catalog algebra.
    #[arg(long, value_enum, required_unless_present = "file", conflicts_with = "file")]
    pub algebra: Option<CatalogName>,
    /// JSON algebra file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Size parameter of matrix-rs and b-nn [default: 2].
    #[arg(long)]
    pub n: Option<usize>,
    /// Parameter of b-22.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Entries of w for b-44, row-major and comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// gamma_1..gamma_4 of the rs-v2m2 bilinear table.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// delta_1..delta_4 of the rs-v2m2 bilinear table.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// epsilon_1..epsilon_4 of the rs-v2m2 mask.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Operator-matrix layout for rs-v2m2.
    #[arg(long, value_enum, default_value_t)]
    pub convention: ConventionArg,
}

/// An algebra over one of the supported coefficient rings.
#[derive(Debug, Clone)]
pub enum DynAlgebra {
    Rational(Arc<AlgebraSpec<Rational>>),
    Symbolic(Arc<AlgebraSpec<RationalFunction>>),
    Polynomial(Arc<AlgebraSpec<Polynomial>>),
    Modular(Arc<AlgebraSpec<Fp>>),
}

/// Runs `$body` with `$a` bound to the spec, whatever the ring.
#[macro_export]
#[doc(hidden)]
macro_rules! with_ring {
    ($alg:expr, $a:ident => $body:expr) => {
        match $alg {
            $crate::cli::DynAlgebra::Rational($a) => $body,
            $crate::cli::DynAlgebra::Symbolic($a) => $body,
            $crate::cli::DynAlgebra::Polynomial($a) => $body,
            $crate::cli::DynAlgebra::Modular($a) => $body,
        }
    };
}

/// Runs `$body` for algebras over a field; polynomial rings are refused.
#[macro_export]
#[doc(hidden)]
macro_rules! with_field {
    ($alg:expr, $a:ident => $body:expr) => {
        match $alg {
            $crate::cli::DynAlgebra::Rational($a) => $body,
            $crate::cli::DynAlgebra::Symbolic($a) => $body,
            $crate::cli::DynAlgebra::Modular($a) => $body,
            $crate::cli::DynAlgebra::Polynomial(a) => {
                return Err($crate::cli::CliError::Domain(format!(
                    "{}: structure computations need a field; declare the ring as rational-function",
                    a.name()
                )))
            }
        }
    };
}

impl DynAlgebra {
    pub fn name(&self) -> &str {
        with_ring!(self, a => a.name())
    }
}

fn parse_list(flag: &str, src: &str, len: usize) -> Result<Vec<ScalarExpr>, CliError> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.len() != len {
        return Err(CliError::Usage(format!(
            "--{flag} takes {len} comma-separated entries, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| ScalarExpr::parse(p).map_err(|e| CliError::Usage(format!("--{flag}: `{p}`: {e}"))))
        .collect()
}

fn symbols(names: &[&str]) -> Vec<ScalarExpr> {
    names.iter().map(|n| ScalarExpr::var(*n)).collect()
}

/// Parameter expressions of the selected catalog algebra, grouped per flag.
/// `None` means the built-in numeric default.
fn parameters(name: CatalogName, args: &AlgebraArgs) -> Result<Vec<Option<Vec<ScalarExpr>>>, CliError> {
    let given = |flag: &str, v: &Option<String>, len| v.as_deref().map(|s| parse_list(flag, s, len)).transpose();
    let stray = |flag: &str, v: &Option<String>| match v {
        Some(_) => Err(CliError::Usage(format!("--{flag} does not apply to {}", name.as_str()))),
        None => Ok(()),
    };
    if !matches!(name, CatalogName::MatrixRs | CatalogName::Bnn) && args.n.is_some() {
        return Err(CliError::Usage(format!("--n does not apply to {}", name.as_str())));
    }
    if !matches!(name, CatalogName::B22) {
        stray("nu", &args.nu)?;
    }
    if !matches!(name, CatalogName::B44) {
        stray("w", &args.w)?;
    }
    if !matches!(name, CatalogName::RsV2m2) {
        stray("gamma", &args.gamma)?;
        stray("delta", &args.delta)?;
        stray("eps", &args.eps)?;
    }
    Ok(match name {
        CatalogName::MatrixRs | CatalogName::Bnn => vec![],
        CatalogName::RsV2m2 => vec![
            given("gamma", &args.gamma, 4)?,
            given("delta", &args.delta, 4)?,
            given("eps", &args.eps, 4)?,
        ],
        CatalogName::B22 => vec![Some(given("nu", &args.nu, 1)?.unwrap_or_else(|| symbols(&["nu"])))],
        CatalogName::B44 => vec![Some(
            given("w", &args.w, 4)?.unwrap_or_else(|| symbols(&["w11", "w12", "w21", "w22"])),
        )],
    })
}

fn four<F: Clone>(v: &[F]) -> [F; 4] {
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

fn build<F: Field>(
    name: CatalogName,
    args: &AlgebraArgs,
    params: &[Option<Vec<ScalarExpr>>],
    ctx: &F::Ctx,
    eval: impl Fn(&ScalarExpr) -> Result<F, CliError>,
) -> Result<AlgebraSpec<F>, CliError> {
    let values = |i: usize| -> Result<Option<Vec<F>>, CliError> {
        params[i].as_ref().map(|v| v.iter().map(&eval).collect()).transpose()
    };
    Ok(match name {
        CatalogName::MatrixRs => catalog::matrix_rs(args.n.unwrap_or(2), ctx)?,
        CatalogName::Bnn => catalog::b_nn(args.n.unwrap_or(2), ctx)?,
        CatalogName::RsV2m2 => {
            let (mut bullet, mut mask) = catalog::rs_v2m2_default_params::<F>(ctx);
            if let Some(v) = values(0)? {
                bullet.gamma = four(&v);
            }
            if let Some(v) = values(1)? {
                bullet.delta = four(&v);
            }
            if let Some(v) = values(2)? {
                mask.epsilon = four(&v);
            }
            catalog::rs_v2m2(&bullet, &mask, args.convention.into(), ctx)?
        }
        CatalogName::B22 => catalog::b_22(&values(0)?.expect("always set")[0], ctx)?,
        CatalogName::B44 => {
            let w = WMatrix {
                entries: four(&values(0)?.expect("always set")),
            };
            catalog::b_44(&w, ctx)?
        }
    })
}

/// Builds the algebra named by the flags. All-numeric parameters give an
/// algebra over the rationals; symbolic ones give one over the field of
/// rational functions in the variables that occur, sorted by name.
pub fn select(args: &AlgebraArgs) -> Result<DynAlgebra, CliError> {
    if let Some(path) = &args.file {
        let params = [&args.nu, &args.w, &args.gamma, &args.delta, &args.eps];
        if args.n.is_some() || params.iter().any(|p| p.is_some()) {
            return Err(CliError::Usage("parameter flags do not apply to --file".into()));
        }
        let bytes = std::fs::read(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        return parse_algebra_file(&bytes);
    }
    let name = args.algebra.expect("clap requires --algebra or --file");
    let params = parameters(name, args)?;
    let vars: BTreeSet<String> = params.iter().flatten().flatten().flat_map(ScalarExpr::variables).collect();
    if vars.is_empty() {
        let spec = build::<Rational>(name, args, &params, &(), |e| Ok(e.eval_in(&(), &Default::default())?))?;
        Ok(DynAlgebra::Rational(Arc::new(spec)))
    } else {
        let u = Universe::new(vars)?;
        let spec = build::<RationalFunction>(name, args, &params, &u, |e| Ok(e.eval_ratfunc(&u)?))?;
        Ok(DynAlgebra::Symbolic(Arc::new(spec)))
    }
}
