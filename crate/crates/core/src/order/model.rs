//! Localized models: a catalog algebra over a fraction field with scaled
//! basis elements `f = z e` and a generic element `a`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::OrderError;
use crate::algebra::{AlgebraSpec, Element, WordEnv};
use crate::catalog::{self, BulletTable, HadamardMask, OperatorConvention, WMatrix};
use crate::math::{Field, RationalFunction, Universe};
use crate::structure::find_unit;

/// Which catalog algebra a model is built on, and how its structure
/// parameters are expressed through ring variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// `F^n + M_n(F)`.
    MatrixRs { n: usize },
    /// `V_2 + M_2(F)` with `gamma_t = mu_t/z`, `delta_t = nu_t/z`, `eps_t = xi_t/z`.
    RsV2m2 { convention: OperatorConvention },
    /// `B_{n|n}`.
    Bnn { n: usize },
    /// `B_{2|2}(nu)` with `nu` an indeterminate.
    B22,
    /// `B_{4|4}(w)` with `w = (z_alpha, z_beta, z_gamma, z_delta)/z`.
    B44,
}

/// A structure parameter of the base algebra and the expression it is set to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamBinding {
    pub parameter: String,
    pub value: String,
}

fn pair(i: usize, j: usize, n: usize) -> String {
    if n >= 10 {
        format!("{i}_{j}")
    } else {
        format!("{i}{j}")
    }
}

impl ModelKind {
    pub fn name(&self) -> String {
        match self {
            ModelKind::MatrixRs { n } => format!("matrix-rs(n={n})"),
            ModelKind::RsV2m2 {
                convention: OperatorConvention::Rows,
            } => "rs-v2m2".into(),
            ModelKind::RsV2m2 {
                convention: OperatorConvention::Columns,
            } => "rs-v2m2(columns)".into(),
            ModelKind::Bnn { n } => format!("b-nn(n={n})"),
            ModelKind::B22 => "b-22".into(),
            ModelKind::B44 => "b-44".into(),
        }
    }

    fn param_variables(&self) -> Vec<String> {
        match self {
            ModelKind::RsV2m2 { .. } => ["mu", "nu", "xi"]
                .iter()
                .flat_map(|p| (1..=4).map(move |t| format!("{p}{t}")))
                .collect(),
            ModelKind::B22 => vec!["nu".into()],
            ModelKind::B44 => ["z_alpha", "z_beta", "z_gamma", "z_delta"].map(String::from).to_vec(),
            _ => vec![],
        }
    }

    pub fn params(&self) -> Vec<ParamBinding> {
        let b = |p: String, v: String| ParamBinding { parameter: p, value: v };
        match self {
            ModelKind::RsV2m2 { .. } => [("gamma", "mu"), ("delta", "nu"), ("eps", "xi")]
                .iter()
                .flat_map(|(p, v)| (1..=4).map(move |t| b(format!("{p}{t}"), format!("{v}{t}/z"))))
                .collect(),
            ModelKind::B22 => vec![b("nu".into(), "nu".into())],
            ModelKind::B44 => ["alpha", "beta", "gamma", "delta"]
                .iter()
                .map(|p| b(format!("w_{p}"), format!("z_{p}/z")))
                .collect(),
            _ => vec![],
        }
    }

    /// Basis labels of the base algebra, in basis order.
    pub fn labels(&self) -> Vec<String> {
        match *self {
            ModelKind::MatrixRs { n } => (1..=n)
                .map(|i| format!("e{i}"))
                .chain((1..=n).flat_map(|i| (1..=n).map(move |j| format!("e{}", pair(i, j, n)))))
                .collect(),
            ModelKind::RsV2m2 { .. } => ["e1", "e2", "e11", "e12", "e21", "e22"].map(String::from).to_vec(),
            ModelKind::Bnn { n } => (1..=n)
                .map(|i| format!("e{i}"))
                .chain((1..=n).map(|i| format!("[e{i}]")))
                .collect(),
            ModelKind::B22 => ["e1", "e2", "[e1]", "[e2]"].map(String::from).to_vec(),
            ModelKind::B44 => ["e11", "e12", "e21", "e22", "[e11]", "[e12]", "[e21]", "[e22]"]
                .map(String::from)
                .to_vec(),
        }
    }

    /// Name bound to `z` times the basis vector `label`.
    pub fn scaled_name(&self, label: &str) -> String {
        let odd = label.starts_with('[');
        let idx = label.trim_start_matches("[e").trim_start_matches('e').trim_end_matches(']');
        let prefix = match (self, odd) {
            (ModelKind::B22, false) => "b",
            (ModelKind::B22, true) => "d",
            (_, false) => "f",
            (_, true) => "g",
        };
        format!("{prefix}{idx}")
    }

    /// Names of the coordinates of `a`, in basis order.
    pub fn generic_coordinates(&self) -> Vec<String> {
        let pairs2 = || ["11", "12", "21", "22"];
        match *self {
            ModelKind::MatrixRs { n } => (1..=n)
                .map(|i| format!("alpha{i}"))
                .chain((1..=n).flat_map(|i| (1..=n).map(move |j| format!("beta{}", pair(i, j, n)))))
                .collect(),
            ModelKind::RsV2m2 { .. } => ["alpha", "beta"]
                .iter()
                .map(|s| s.to_string())
                .chain(pairs2().iter().map(|p| format!("alpha{p}")))
                .collect(),
            ModelKind::Bnn { n } => (1..=n)
                .map(|i| format!("alpha{i}"))
                .chain((1..=n).map(|i| format!("beta{i}")))
                .collect(),
            ModelKind::B22 => ["alpha1", "alpha2", "beta1", "beta2"].map(String::from).to_vec(),
            ModelKind::B44 => pairs2()
                .iter()
                .map(|p| format!("alpha{p}"))
                .chain(pairs2().iter().map(|p| format!("beta{p}")))
                .collect(),
        }
    }

    /// Ring variables: `z`, then structure parameters, then the coordinates
    /// of `a`.
    pub fn variables(&self) -> Vec<String> {
        let mut v = vec!["z".to_string()];
        v.extend(self.param_variables());
        v.extend(self.generic_coordinates());
        v
    }

    /// The base algebra over `F` at the given variable values.
    pub fn base_algebra<F: Field>(&self, ctx: &F::Ctx, values: &BTreeMap<String, F>) -> Result<AlgebraSpec<F>, OrderError> {
        let get = |name: &str| -> Result<F, OrderError> {
            values
                .get(name)
                .cloned()
                .ok_or_else(|| crate::math::MathError::IncompleteAssignment(name.to_string()).into())
        };
        let over_z = |name: String| -> Result<F, OrderError> { Ok(get(&name)?.div(&get("z")?)?) };
        let spec = match *self {
            ModelKind::MatrixRs { n } => catalog::matrix_rs(n, ctx)?,
            ModelKind::RsV2m2 { convention } => {
                let four = |p: &str| -> Result<[F; 4], OrderError> {
                    Ok([
                        over_z(format!("{p}1"))?,
                        over_z(format!("{p}2"))?,
                        over_z(format!("{p}3"))?,
                        over_z(format!("{p}4"))?,
                    ])
                };
                let bullet = BulletTable {
                    gamma: four("mu")?,
                    delta: four("nu")?,
                };
                let mask = HadamardMask { epsilon: four("xi")? };
                catalog::rs_v2m2(&bullet, &mask, convention, ctx)?
            }
            ModelKind::Bnn { n } => catalog::b_nn(n, ctx)?,
            ModelKind::B22 => catalog::b_22(&get("nu")?, ctx)?,
            ModelKind::B44 => {
                let w = WMatrix {
                    entries: [
                        over_z("z_alpha".into())?,
                        over_z("z_beta".into())?,
                        over_z("z_gamma".into())?,
                        over_z("z_delta".into())?,
                    ],
                };
                catalog::b_44(&w, ctx)?
            }
        };
        Ok(spec)
    }
}

/// A catalog algebra over a field of fractions, with the scaled elements and
/// generic element used by the coefficient-extraction displays.
#[derive(Debug, Clone)]
pub struct LocalizedModel<F: Field> {
    pub kind: ModelKind,
    pub base: Arc<AlgebraSpec<F>>,
    /// `z` times each basis vector, by display name (`f1`, `f12`, `g2`, `b1`, ...).
    pub scaled: BTreeMap<String, Element<F>>,
    pub generic_a: Element<F>,
    pub params: Vec<ParamBinding>,
    pub unit: Element<F>,
    /// Bindings for word evaluation: scaled elements, `a`, and every ring
    /// variable as a scalar.
    pub env: WordEnv<F>,
}

impl<F: Field> LocalizedModel<F> {
    /// Builds the model at the given values of [`ModelKind::variables`].
    pub fn instantiate(kind: ModelKind, ctx: &F::Ctx, values: &BTreeMap<String, F>) -> Result<Self, OrderError> {
        let base = Arc::new(kind.base_algebra(ctx, values)?);
        let unit = find_unit(&base)?.ok_or_else(|| OrderError::NoUnit(base.name().to_string()))?;
        let z = values
            .get("z")
            .cloned()
            .ok_or_else(|| crate::math::MathError::IncompleteAssignment("z".into()))?;
        let mut env = WordEnv::new(ctx.clone());
        env.scalars = values.clone();
        let mut scaled = BTreeMap::new();
        for (i, label) in base.labels().iter().enumerate() {
            let e = Element::basis_scaled(&base, i, z.clone());
            env.bind(kind.scaled_name(label), e.clone());
            scaled.insert(kind.scaled_name(label), e);
        }
        let coords = kind
            .generic_coordinates()
            .iter()
            .map(|v| {
                values
                    .get(v)
                    .cloned()
                    .ok_or_else(|| crate::math::MathError::IncompleteAssignment(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let generic_a = Element::from_coords(&base, coords)?;
        env.bind("a", generic_a.clone());
        Ok(LocalizedModel {
            kind,
            base,
            scaled,
            generic_a,
            params: kind.params(),
            unit,
            env,
        })
    }

    pub fn variables(&self) -> Vec<String> {
        self.kind.variables()
    }
}

/// The symbolic model: every variable is an indeterminate of one shared
/// rational-function field.
pub fn build_localized_model(kind: ModelKind) -> Result<LocalizedModel<RationalFunction>, OrderError> {
    match kind {
        ModelKind::MatrixRs { n } | ModelKind::Bnn { n } if n < 2 => {
            return Err(OrderError::Size { n, min: 2 });
        }
        _ => {}
    }
    let universe = Universe::new(kind.variables())?;
    let values = symbolic_values(&universe)?;
    LocalizedModel::instantiate(kind, &universe, &values)
}

pub(crate) fn symbolic_values(universe: &Universe) -> Result<BTreeMap<String, RationalFunction>, OrderError> {
    universe
        .names()
        .iter()
        .map(|n| Ok((n.clone(), RationalFunction::var(universe, n)?)))
        .collect()
}
