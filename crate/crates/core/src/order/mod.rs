//! Symbolic re-verification of coefficient-extraction displays.
//!
//! Each display is a word in scaled basis elements and a generic element `a`
//! of a catalog algebra over a rational-function field. The verifier
//! evaluates it exactly, compares it with the stated scalar times a target
//! (the unit or a basis vector), and repeats the comparison at random points
//! over a prime field as an independent shadow.

mod lemmas;
mod model;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraError, Element, WordTree};
use crate::catalog::OperatorConvention;
use crate::math::{Field, Fp, MathError, PrimeModulus, RationalFunction, Ring, ScalarExpr, Universe, DEFAULT_PRIME};

pub use lemmas::{verify_lemma1, verify_lemma2, verify_lemma3, verify_lemma4, verify_lemma5};
pub use model::{build_localized_model, LocalizedModel, ModelKind, ParamBinding};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("not a scalar multiple of {target}: offending coordinates {}", fmt_coords(.offending))]
    Extraction { target: String, offending: Vec<(String, String)> },
    #[error("{0} has no two-sided unit")]
    NoUnit(String),
    #[error("n = {n} is too small; need n >= {min}")]
    Size { n: usize, min: usize },
    #[error("case must be 1 or 2, got {0}")]
    Case(u8),
    #[error("no admissible random point found after {0} draws")]
    Shadow(usize),
}

fn fmt_coords(c: &[(String, String)]) -> String {
    c.iter().map(|(l, v)| format!("{l}: {v}")).collect::<Vec<_>>().join(", ")
}

/// The result of reading off `x = result * along`.
#[derive(Debug, Clone)]
pub struct ScalarExtraction<F: Field> {
    pub input: Element<F>,
    pub unit: Element<F>,
    pub result: F,
}

/// Returns `λ` with `x = λ · along`, exactly.
pub fn extract_along<F: Field>(x: &Element<F>, along: &Element<F>) -> Result<F, OrderError> {
    let ctx = along.algebra().ctx();
    let lambda = match along.coords().iter().position(|c| !c.is_zero()) {
        Some(i) => x.coord(i).div(along.coord(i))?,
        None => F::zero(ctx),
    };
    let offending: Vec<(String, String)> = x
        .coords()
        .iter()
        .zip(along.coords())
        .enumerate()
        .filter(|(_, (xi, ui))| **xi != lambda.mul(ui))
        .map(|(i, (xi, _))| (along.algebra().label(i).to_string(), xi.to_string()))
        .collect();
    if offending.is_empty() {
        Ok(lambda)
    } else {
        Err(OrderError::Extraction {
            target: along.to_string(),
            offending,
        })
    }
}

/// Reads `x` as a scalar multiple of the model's unit.
pub fn extract_scalar<F: Field>(x: &Element<F>, model: &LocalizedModel<F>) -> Result<ScalarExtraction<F>, OrderError> {
    Ok(ScalarExtraction {
        input: x.clone(),
        unit: model.unit.clone(),
        result: extract_along(x, &model.unit)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// A display as printed; counts toward the verdict.
    Published,
    /// A display the proof relies on without printing it; counts toward
    /// the verdict.
    Derived,
    /// A repaired form of a failing published display; counts toward the
    /// corrected verdict only.
    Corrected,
    /// Recorded for information only.
    Observation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Unit,
    Basis(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub scalar: ScalarExpr,
    pub target: Target,
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.target {
            Target::Unit => write!(f, "({}) * 1", self.scalar),
            Target::Basis(l) => write!(f, "({}) * {l}", self.scalar),
        }
    }
}

/// One display to verify. `words` holds alternative readings tried in
/// order (e.g. association conventions); the first that matches is used.
#[derive(Debug, Clone)]
pub struct DisplayPlan {
    pub label: String,
    pub role: Role,
    pub words: Vec<(Option<String>, WordTree)>,
    pub expected: Expected,
    pub z_exponent: u32,
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LemmaPlan {
    pub lemma: u8,
    pub kind: ModelKind,
    /// Named intermediate elements, evaluated in order and bound for later
    /// words.
    pub lets: Vec<(String, WordTree)>,
    pub displays: Vec<DisplayPlan>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Exact values behind a record.
#[derive(Debug, Clone)]
pub struct ExactRecord {
    pub value: Element<RationalFunction>,
    pub expected: Element<RationalFunction>,
    pub scalar: Option<RationalFunction>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DisplayRecord {
    pub label: String,
    pub role: Role,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    pub expected: String,
    pub z_exponent: u32,
    pub value: String,
    /// Coefficient of the value along the expected target, if the value is
    /// a multiple of it.
    pub scalar: Option<String>,
    pub is_unit_multiple: bool,
    /// Degree in `z` of the extracted scalar.
    pub z_degree: Option<i64>,
    pub matches: bool,
    /// The value is exactly the negative of the expected element.
    pub sign_mismatch: bool,
    pub defect: String,
    /// Structure parameters occurring in the value.
    pub parameter_support: Vec<String>,
    pub shadow_failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub exact: Option<ExactRecord>,
}

impl DisplayRecord {
    pub fn counted(&self) -> bool {
        matches!(self.role, Role::Published | Role::Derived)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Definition {
    pub name: String,
    pub word: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShadowOptions {
    pub prime: u64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for ShadowOptions {
    fn default() -> Self {
        ShadowOptions {
            prime: DEFAULT_PRIME,
            trials: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: u8,
    pub algebra: String,
    pub variables: Vec<String>,
    pub params: Vec<ParamBinding>,
    pub definitions: Vec<Definition>,
    /// Conventions under which the counted records were evaluated.
    pub conventions: Vec<String>,
    pub records: Vec<DisplayRecord>,
    /// Pass iff every published and derived record matches.
    pub verdict: Outcome,
    /// Pass iff every corrected record matches; absent without corrections.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected_verdict: Option<Outcome>,
    pub shadow: ShadowOptions,
    pub shadow_redraws: u64,
    pub notes: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.verdict == Outcome::Pass
    }

    pub fn record(&self, label: &str) -> Option<&DisplayRecord> {
        self.records.iter().find(|r| r.label == label)
    }

    pub fn counted(&self) -> impl Iterator<Item = &DisplayRecord> {
        self.records.iter().filter(|r| r.counted())
    }
}

fn bind_lets<F: Field>(model: &mut LocalizedModel<F>, lets: &[(String, WordTree)]) -> Result<(), OrderError> {
    for (name, w) in lets {
        let v = w.evaluate(&model.env)?;
        model.env.bind(name.clone(), v);
    }
    Ok(())
}

fn expected_element<F: Field>(model: &LocalizedModel<F>, e: &Expected) -> Result<Element<F>, OrderError> {
    let along = target_element(model, &e.target)?;
    Ok(along.scale(&model.env.scalar(&e.scalar)?))
}

fn target_element<F: Field>(model: &LocalizedModel<F>, t: &Target) -> Result<Element<F>, OrderError> {
    match t {
        Target::Unit => Ok(model.unit.clone()),
        Target::Basis(l) => {
            let i = model
                .base
                .index_of(l)
                .ok_or_else(|| AlgebraError::UnboundLeaf(l.clone()))?;
            Ok(Element::basis(&model.base, i))
        }
    }
}

fn support_names(x: &Element<RationalFunction>, universe: &Universe) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for c in x.coords() {
        for p in [c.numerator(), c.denominator()] {
            for v in p.support() {
                out.insert(universe.name(v).to_string());
            }
        }
    }
    out
}

/// Evaluates one display in the symbolic model: alternatives in order,
/// stopping at the first match.
fn evaluate_display(
    model: &LocalizedModel<RationalFunction>,
    d: &DisplayPlan,
    param_vars: &BTreeSet<String>,
) -> Result<(usize, DisplayRecord), OrderError> {
    let expected = expected_element(model, &d.expected)?;
    let mut chosen = None;
    for (k, (_, w)) in d.words.iter().enumerate() {
        let v = w.evaluate(&model.env)?;
        let hit = v == expected;
        if chosen.is_none() || hit {
            chosen = Some((k, v));
        }
        if hit {
            break;
        }
    }
    let (k, value) = chosen.expect("a display has at least one word");
    let along = target_element(model, &d.expected.target)?;
    let scalar = extract_along(&value, &along).ok();
    let z = model.env.ctx.index_of("z").expect("z is a model variable");
    let matches = value == expected;
    let sign_mismatch = !matches && !expected.is_zero() && value == expected.neg();
    let defect = value.sub(&expected)?;
    let record = DisplayRecord {
        label: d.label.clone(),
        role: d.role,
        display: d.words[k].1.to_string(),
        convention: d.words[k].0.clone(),
        expected: d.expected.to_string(),
        z_exponent: d.z_exponent,
        value: value.to_string(),
        scalar: scalar.as_ref().map(|s| s.to_string()),
        is_unit_multiple: extract_along(&value, &model.unit).is_ok(),
        z_degree: scalar.as_ref().filter(|s| !s.is_zero()).map(|s| s.degree_in(z)),
        matches,
        sign_mismatch,
        defect: defect.to_string(),
        parameter_support: support_names(&value, &model.env.ctx)
            .intersection(param_vars)
            .cloned()
            .collect(),
        shadow_failures: 0,
        note: d.note.clone(),
        exact: Some(ExactRecord { value, expected, scalar }),
    };
    Ok((k, record))
}

const SHADOW_REDRAWS: usize = 32;

fn is_degenerate_point(e: &OrderError) -> bool {
    matches!(
        e,
        OrderError::Math(MathError::DivisionByZero | MathError::Characteristic { .. })
            | OrderError::Algebra(AlgebraError::Math(MathError::DivisionByZero | MathError::Characteristic { .. }))
            | OrderError::Algebra(AlgebraError::Parameter(_))
            | OrderError::NoUnit(_)
    )
}

/// Per display, the number of random points of `GF(p)` at which the chosen
/// word differs from the expected element; plus the number of redraws
/// caused by points where the model degenerates.
fn shadow(plan: &LemmaPlan, chosen: &[usize], opts: &ShadowOptions) -> Result<(Vec<u64>, u64), OrderError> {
    let m = PrimeModulus::new(opts.prime)?;
    let vars = plan.kind.variables();
    let trials: Vec<(Vec<bool>, u64)> = (0..opts.trials)
        .into_par_iter()
        .map(|trial| -> Result<_, OrderError> {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(trial);
            for redraw in 0..SHADOW_REDRAWS {
                let values: BTreeMap<String, Fp> = vars
                    .iter()
                    .map(|v| (v.clone(), Fp::new(rng.gen_range(1..m.get()), m)))
                    .collect();
                match shadow_point(plan, chosen, m, &values) {
                    Ok(bad) => return Ok((bad, redraw as u64)),
                    Err(e) if is_degenerate_point(&e) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(OrderError::Shadow(SHADOW_REDRAWS))
        })
        .collect::<Result<_, _>>()?;
    let mut failures = vec![0u64; plan.displays.len()];
    let mut redraws = 0;
    for (bad, r) in trials {
        redraws += r;
        for (f, b) in failures.iter_mut().zip(bad) {
            *f += b as u64;
        }
    }
    Ok((failures, redraws))
}

fn shadow_point(
    plan: &LemmaPlan,
    chosen: &[usize],
    m: PrimeModulus,
    values: &BTreeMap<String, Fp>,
) -> Result<Vec<bool>, OrderError> {
    let mut model = LocalizedModel::instantiate(plan.kind, &m, values)?;
    bind_lets(&mut model, &plan.lets)?;
    plan.displays
        .iter()
        .zip(chosen)
        .map(|(d, &k)| {
            let v = d.words[k].1.evaluate(&model.env)?;
            Ok(v != expected_element(&model, &d.expected)?)
        })
        .collect()
}

/// Evaluates every display of `plan` symbolically and in the shadow.
pub fn run_plan(plan: &LemmaPlan, opts: &ShadowOptions) -> Result<LemmaReport, OrderError> {
    let mut model = build_localized_model(plan.kind)?;
    bind_lets(&mut model, &plan.lets)?;
    let coords: BTreeSet<String> = plan.kind.generic_coordinates().into_iter().collect();
    let param_vars: BTreeSet<String> = plan
        .kind
        .variables()
        .into_iter()
        .filter(|v| v != "z" && !coords.contains(v))
        .collect();
    let evaluated: Vec<(usize, DisplayRecord)> = plan
        .displays
        .par_iter()
        .map(|d| evaluate_display(&model, d, &param_vars))
        .collect::<Result<_, _>>()?;
    let chosen: Vec<usize> = evaluated.iter().map(|(k, _)| *k).collect();
    let mut records: Vec<DisplayRecord> = evaluated.into_iter().map(|(_, r)| r).collect();
    let (failures, redraws) = shadow(plan, &chosen, opts)?;
    for (r, f) in records.iter_mut().zip(failures) {
        r.shadow_failures = f;
    }

    let verdict = Outcome::of(records.iter().filter(|r| r.counted()).all(|r| r.matches));
    let corrected: Vec<&DisplayRecord> = records.iter().filter(|r| r.role == Role::Corrected).collect();
    let corrected_verdict = (!corrected.is_empty()).then(|| Outcome::of(corrected.iter().all(|r| r.matches)));
    let mut conventions = Vec::new();
    if let ModelKind::RsV2m2 { convention } = plan.kind {
        conventions.push(format!(
            "operator: {}",
            match convention {
                OperatorConvention::Rows => "rows",
                OperatorConvention::Columns => "columns",
            }
        ));
    }
    let used: BTreeSet<String> = records
        .iter()
        .filter(|r| r.counted() && r.matches)
        .filter_map(|r| r.convention.clone())
        .collect();
    conventions.extend(used);

    Ok(LemmaReport {
        lemma: plan.lemma,
        algebra: plan.kind.name(),
        variables: plan.kind.variables(),
        params: plan.kind.params(),
        definitions: plan
            .lets
            .iter()
            .map(|(n, w)| Definition {
                name: n.clone(),
                word: w.to_string(),
            })
            .collect(),
        conventions,
        records,
        verdict,
        corrected_verdict,
        shadow: *opts,
        shadow_redraws: redraws,
        notes: Vec::new(),
    })
}
