//! Multilinear (super)identities, checked exhaustively on basis tuples or by
//! random evaluation over a prime field.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraError, AlgebraSpec, Element};
use crate::math::{Fp, MathError, PrimeModulus, Ring, Specialize};

/// A product pattern in the identity's arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Arg(usize),
    Mul(Box<Pattern>, Box<Pattern>),
}

impl Pattern {
    fn mul(l: Pattern, r: Pattern) -> Pattern {
        Pattern::Mul(Box::new(l), Box::new(r))
    }

    fn args(&self, out: &mut Vec<usize>) {
        match self {
            Pattern::Arg(i) => out.push(*i),
            Pattern::Mul(l, r) => {
                l.args(out);
                r.args(out);
            }
        }
    }

    pub fn eval<R: Ring>(&self, args: &[Element<R>]) -> Result<Element<R>, AlgebraError> {
        match self {
            Pattern::Arg(i) => Ok(args[*i].clone()),
            Pattern::Mul(l, r) => l.eval(args)?.multiply(&r.eval(args)?),
        }
    }

    fn permute(&self, perm: &[usize]) -> Pattern {
        match self {
            Pattern::Arg(i) => Pattern::Arg(perm[*i]),
            Pattern::Mul(l, r) => Pattern::mul(l.permute(perm), r.permute(perm)),
        }
    }
}

/// Sign of a term as a function of the argument parities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRule {
    Plus,
    /// `(-1)^{|x_a||x_b|}`.
    Super(usize, usize),
}

impl SignRule {
    fn sign(self, parities: &[u8]) -> bool {
        match self {
            SignRule::Plus => true,
            SignRule::Super(a, b) => parities[a] & parities[b] == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub sign: SignRule,
    pub pattern: Pattern,
}

/// A multilinear identity `Σ coeff · sign · pattern(x_0, ..., x_{arity-1}) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySpec {
    pub name: String,
    pub arity: usize,
    pub terms: Vec<Term>,
    /// Restricts argument `i` to the homogeneous component of this parity.
    pub arg_parity: Option<Vec<u8>>,
}

fn x(i: usize) -> Pattern {
    Pattern::Arg(i)
}

/// `(xy)z - x(yz)` as terms with the given coefficient and sign.
fn assoc_terms(a: usize, b: usize, c: usize, coeff: i64, sign: SignRule) -> [Term; 2] {
    [
        Term {
            coeff,
            sign,
            pattern: Pattern::mul(Pattern::mul(x(a), x(b)), x(c)),
        },
        Term {
            coeff: -coeff,
            sign,
            pattern: Pattern::mul(x(a), Pattern::mul(x(b), x(c))),
        },
    ]
}

impl IdentitySpec {
    /// Validates multilinearity: every term uses each argument exactly once.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        terms: Vec<Term>,
        arg_parity: Option<Vec<u8>>,
    ) -> Result<Self, AlgebraError> {
        let name = name.into();
        for t in &terms {
            let mut used = Vec::new();
            t.pattern.args(&mut used);
            used.sort_unstable();
            if used != (0..arity).collect::<Vec<_>>() {
                return Err(AlgebraError::Parameter(format!(
                    "identity `{name}` is not multilinear: a term uses arguments {used:?}"
                )));
            }
            if let SignRule::Super(a, b) = t.sign {
                if a >= arity || b >= arity {
                    return Err(AlgebraError::Parameter(format!("identity `{name}`: sign refers to a missing argument")));
                }
            }
        }
        if let Some(p) = &arg_parity {
            if p.len() != arity {
                return Err(AlgebraError::Length {
                    what: "argument parities",
                    expected: arity,
                    found: p.len(),
                });
            }
        }
        Ok(IdentitySpec {
            name,
            arity,
            terms,
            arg_parity,
        })
    }

    pub fn associative() -> Self {
        Self::new("associative", 3, assoc_terms(0, 1, 2, 1, SignRule::Plus).to_vec(), None).expect("valid")
    }

    pub fn commutative() -> Self {
        let terms = vec![
            Term {
                coeff: 1,
                sign: SignRule::Plus,
                pattern: Pattern::mul(x(0), x(1)),
            },
            Term {
                coeff: -1,
                sign: SignRule::Plus,
                pattern: Pattern::mul(x(1), x(0)),
            },
        ];
        Self::new("commutative", 2, terms, None).expect("valid")
    }

    /// `(x, y, z) - (x, z, y)`.
    pub fn right_symmetric() -> Self {
        let mut terms = assoc_terms(0, 1, 2, 1, SignRule::Plus).to_vec();
        terms.extend(assoc_terms(0, 2, 1, -1, SignRule::Plus));
        Self::new("right-symmetric", 3, terms, None).expect("valid")
    }

    /// `(x, y, z) + (-1)^{|z||y|} (x, z, y)`.
    pub fn right_alternative_super() -> Self {
        let mut terms = assoc_terms(0, 1, 2, 1, SignRule::Plus).to_vec();
        terms.extend(assoc_terms(0, 2, 1, 1, SignRule::Super(2, 1)));
        Self::new("right-alternative-super", 3, terms, None).expect("valid")
    }

    /// The conditions making up "abelian type": the even part is associative
    /// and commutative, and the odd part is an associative bimodule over it.
    pub fn abelian_type_parts() -> Vec<Self> {
        let assoc = |name: &str, par: [u8; 3]| {
            Self::new(name, 3, assoc_terms(0, 1, 2, 1, SignRule::Plus).to_vec(), Some(par.to_vec())).expect("valid")
        };
        let mut comm = Self::commutative();
        comm.name = "even-commutative".into();
        comm.arg_parity = Some(vec![0, 0]);
        vec![
            assoc("even-associative", [0, 0, 0]),
            comm,
            assoc("bimodule(a,b,m)", [0, 0, 1]),
            assoc("bimodule(a,m,b)", [0, 1, 0]),
            assoc("bimodule(m,a,b)", [1, 0, 0]),
        ]
    }

    /// Built-in identities by CLI name; `abelian-type` is composite and is
    /// handled by [`check_abelian_type`].
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "associative" => Some(Self::associative()),
            "commutative" => Some(Self::commutative()),
            "right-symmetric" => Some(Self::right_symmetric()),
            "right-alternative-super" => Some(Self::right_alternative_super()),
            _ => None,
        }
    }

    pub fn is_super(&self) -> bool {
        self.terms.iter().any(|t| t.sign != SignRule::Plus) || self.arg_parity.is_some()
    }

    /// The same identity with argument `i` renamed to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                sign: match t.sign {
                    SignRule::Plus => SignRule::Plus,
                    SignRule::Super(a, b) => SignRule::Super(perm[a], perm[b]),
                },
                pattern: t.pattern.permute(perm),
            })
            .collect();
        let arg_parity = self.arg_parity.as_ref().map(|p| {
            let mut q = vec![0; p.len()];
            for (i, &v) in p.iter().enumerate() {
                q[perm[i]] = v;
            }
            q
        });
        Self::new(self.name.clone(), self.arity, terms, arg_parity)
    }

    /// Defect on homogeneous arguments with the given parities.
    pub fn defect<R: Ring>(&self, args: &[Element<R>], parities: &[u8]) -> Result<Element<R>, AlgebraError> {
        let ctx = args[0].algebra().ctx().clone();
        let mut acc = Element::zero(args[0].algebra());
        for t in &self.terms {
            let v = t.pattern.eval(args)?;
            let c = if t.sign.sign(parities) { t.coeff } else { -t.coeff };
            acc = acc.add(&v.scale(&R::from_int(&ctx, c)))?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Failing condition, for composite checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    /// Basis indices of the failing tuple (exhaustive checks).
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    /// Trial number (randomized checks).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub defect: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub algebra: String,
    pub method: Method,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub tuples_checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

fn candidate_indices<R: Ring>(alg: &AlgebraSpec<R>, parity: Option<u8>) -> Vec<usize> {
    (0..alg.dim())
        .filter(|&i| parity.is_none_or(|p| alg.parity()[i] == p))
        .collect()
}

/// Checks `id` on every tuple of basis vectors. By multilinearity this
/// decides the identity over the coefficient ring.
///
/// Tuples checked, failures and first witness for one value of the first slot.
type Chunk<R> = (u64, u64, Option<(Vec<usize>, Element<R>)>);

/// Identities with parity-dependent signs need a graded algebra.
pub fn check_multilinear_identity<R: Ring>(
    alg: &Arc<AlgebraSpec<R>>,
    id: &IdentitySpec,
) -> Result<CheckReport, AlgebraError> {
    if id.is_super() && !alg.is_graded() {
        return Err(AlgebraError::Ungraded(alg.name().to_string()));
    }
    let slots: Vec<Vec<usize>> = (0..id.arity)
        .map(|s| candidate_indices(alg, id.arg_parity.as_ref().map(|p| p[s])))
        .collect();
    let basis: Vec<Element<R>> = (0..alg.dim()).map(|i| Element::basis(alg, i)).collect();

    // Parallel over the first slot; within a chunk tuples run in lexicographic
    // order, so the first witness is the lexicographically smallest.
    let first = slots.first().cloned().unwrap_or_default();
    let chunks: Vec<Chunk<R>> = first
        .par_iter()
        .map(|&i0| -> Result<_, AlgebraError> {
            let mut checked = 0u64;
            let mut failures = 0u64;
            let mut witness = None;
            let mut tuple = vec![i0];
            enumerate(&slots, 1, &mut tuple, &mut |t| {
                checked += 1;
                let args: Vec<Element<R>> = t.iter().map(|&i| basis[i].clone()).collect();
                let parities: Vec<u8> = t.iter().map(|&i| alg.parity()[i]).collect();
                let d = id.defect(&args, &parities)?;
                if !d.is_zero() {
                    failures += 1;
                    if witness.is_none() {
                        witness = Some((t.to_vec(), d));
                    }
                }
                Ok(())
            })?;
            Ok((checked, failures, witness))
        })
        .collect::<Result<_, _>>()?;

    let mut checked = 0;
    let mut failures = 0;
    let mut witness = None;
    for (c, f, w) in chunks {
        checked += c;
        failures += f;
        if witness.is_none() {
            witness = w;
        }
    }
    Ok(CheckReport {
        identity: id.name.clone(),
        algebra: alg.name().to_string(),
        method: Method::Exhaustive,
        verdict: if failures == 0 { Verdict::Holds } else { Verdict::Fails },
        witness: witness.map(|(t, d)| Witness {
            condition: None,
            labels: t.iter().map(|&i| alg.label(i).to_string()).collect(),
            indices: t,
            trial: None,
            defect: d.to_string(),
        }),
        tuples_checked: checked,
        failures,
        prime: None,
    })
}

fn enumerate(
    slots: &[Vec<usize>],
    depth: usize,
    tuple: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<(), AlgebraError>,
) -> Result<(), AlgebraError> {
    if depth == slots.len() {
        return f(tuple);
    }
    for &i in &slots[depth] {
        tuple.push(i);
        enumerate(slots, depth + 1, tuple, f)?;
        tuple.pop();
    }
    Ok(())
}

/// `(x, y, z) + (-1)^{|z||y|}(x, z, y) = 0` on all homogeneous basis triples.
pub fn check_super_right_alternative<R: Ring>(alg: &Arc<AlgebraSpec<R>>) -> Result<CheckReport, AlgebraError> {
    check_multilinear_identity(alg, &IdentitySpec::right_alternative_super())
}

fn merge(name: &str, parts: Vec<CheckReport>) -> CheckReport {
    let first = &parts[0];
    let mut out = CheckReport {
        identity: name.to_string(),
        algebra: first.algebra.clone(),
        method: first.method,
        verdict: Verdict::Holds,
        witness: None,
        tuples_checked: 0,
        failures: 0,
        prime: first.prime,
    };
    for p in parts {
        out.tuples_checked += p.tuples_checked;
        out.failures += p.failures;
        if out.witness.is_none() {
            if let Some(mut w) = p.witness {
                w.condition = Some(p.identity.clone());
                out.witness = Some(w);
            }
        }
    }
    if out.failures > 0 {
        out.verdict = Verdict::Fails;
    }
    out
}

/// Even part associative and commutative; odd part an associative bimodule.
pub fn check_abelian_type<R: Ring>(alg: &Arc<AlgebraSpec<R>>) -> Result<CheckReport, AlgebraError> {
    if !alg.is_graded() {
        return Err(AlgebraError::Ungraded(alg.name().to_string()));
    }
    let parts = IdentitySpec::abelian_type_parts()
        .iter()
        .map(|id| check_multilinear_identity(alg, id))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge("abelian-type", parts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomCheckOptions {
    pub prime: u64,
    pub trials: u64,
    pub seed: u64,
    /// Permit characteristic 2 and 3, which are refused by default.
    pub allow_small_prime: bool,
}

impl Default for RandomCheckOptions {
    fn default() -> Self {
        RandomCheckOptions {
            prime: crate::math::DEFAULT_PRIME,
            trials: 100,
            seed: 0,
            allow_small_prime: false,
        }
    }
}

/// How many fresh parameter points to try before giving up on a trial whose
/// point makes a structure-constant denominator vanish.
const POINT_RETRIES: usize = 32;

fn random_fp(rng: &mut ChaCha8Rng, m: PrimeModulus) -> Fp {
    Fp::new(rng.gen_range(0..m.get()), m)
}

/// A uniformly random nonzero point for the coefficient ring's indeterminates
/// and the algebra specialized there.
pub(crate) fn specialize_at_random<R: Specialize>(
    alg: &AlgebraSpec<R>,
    m: PrimeModulus,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Fp>, Arc<AlgebraSpec<Fp>>), AlgebraError> {
    let n = R::indeterminates(alg.ctx());
    let mut last = None;
    for _ in 0..POINT_RETRIES {
        let point: Vec<Fp> = (0..n).map(|_| Fp::new(rng.gen_range(1..m.get()), m)).collect();
        match alg.specialize(m, &point) {
            Ok(a) => return Ok((point, Arc::new(a))),
            // p divides a rational denominator: no point can help.
            Err(e @ AlgebraError::Math(MathError::Characteristic { .. })) if n == 0 => return Err(e),
            Err(e @ AlgebraError::Math(MathError::Characteristic { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

pub(crate) fn check_prime(opts: &RandomCheckOptions) -> Result<PrimeModulus, AlgebraError> {
    let m = PrimeModulus::new(opts.prime)?;
    if opts.prime <= 3 && !opts.allow_small_prime {
        return Err(AlgebraError::Parameter(format!(
            "characteristic {} is refused by default",
            opts.prime
        )));
    }
    Ok(m)
}

/// Evaluates the defect of `id` at `trials` random argument tuples over
/// `GF(p)`. Parameters of the coefficient ring get a fresh random point per
/// trial. Arguments are split into homogeneous parts before sign-sensitive
/// evaluation. A nonzero defect refutes the identity; zero defects only
/// make it likely.
pub fn randomized_check<R: Specialize>(
    alg: &AlgebraSpec<R>,
    id: &IdentitySpec,
    opts: &RandomCheckOptions,
) -> Result<CheckReport, AlgebraError> {
    if id.is_super() && !alg.is_graded() {
        return Err(AlgebraError::Ungraded(alg.name().to_string()));
    }
    let m = check_prime(opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = 0;
    let mut witness = None;
    let parametric = R::indeterminates(alg.ctx()) > 0;
    let mut fixed: Option<Arc<AlgebraSpec<Fp>>> = None;
    for trial in 0..opts.trials {
        let spec = if parametric {
            specialize_at_random(alg, m, &mut rng)?.1
        } else {
            if fixed.is_none() {
                fixed = Some(specialize_at_random(alg, m, &mut rng)?.1);
            }
            fixed.clone().expect("set above")
        };
        let args: Vec<Element<Fp>> = (0..id.arity)
            .map(|_| {
                let coords = (0..spec.dim()).map(|_| random_fp(&mut rng, m)).collect();
                Element::from_coords(&spec, coords)
            })
            .collect::<Result<_, _>>()?;
        let d = super_defect(id, &args, spec.is_graded())?;
        if !d.is_zero() {
            failures += 1;
            if witness.is_none() {
                witness = Some(Witness {
                    condition: None,
                    indices: vec![],
                    labels: vec![],
                    trial: Some(trial),
                    defect: d.to_string(),
                });
            }
        }
    }
    Ok(CheckReport {
        identity: id.name.clone(),
        algebra: alg.name().to_string(),
        method: Method::Randomized,
        verdict: if failures == 0 { Verdict::Holds } else { Verdict::Fails },
        witness,
        tuples_checked: opts.trials,
        failures,
        prime: Some(opts.prime),
    })
}

/// Defect at arbitrary arguments: expands each argument into homogeneous
/// components and sums the signed defects over all parity combinations.
fn super_defect<R: Ring>(id: &IdentitySpec, args: &[Element<R>], graded: bool) -> Result<Element<R>, AlgebraError> {
    if !graded || !id.is_super() {
        return id.defect(args, &vec![0; id.arity]);
    }
    let mut acc = Element::zero(args[0].algebra());
    for mask in 0..(1u32 << id.arity) {
        let parities: Vec<u8> = (0..id.arity).map(|i| ((mask >> i) & 1) as u8).collect();
        if let Some(req) = &id.arg_parity {
            if *req != parities {
                continue;
            }
        }
        let parts: Vec<Element<R>> = args.iter().zip(&parities).map(|(a, &p)| a.homogeneous_part(p)).collect();
        if parts.iter().any(Element::is_zero) {
            continue;
        }
        acc = acc.add(&id.defect(&parts, &parities)?)?;
    }
    Ok(acc)
}

/// Randomized version of [`check_abelian_type`].
pub fn randomized_abelian_type<R: Specialize>(
    alg: &AlgebraSpec<R>,
    opts: &RandomCheckOptions,
) -> Result<CheckReport, AlgebraError> {
    if !alg.is_graded() {
        return Err(AlgebraError::Ungraded(alg.name().to_string()));
    }
    let parts = IdentitySpec::abelian_type_parts()
        .iter()
        .map(|id| randomized_check(alg, id, opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge("abelian-type", parts))
}

/// Searches basis triples for a nonzero associator.
pub fn find_nonassociative_triple<R: Ring>(alg: &Arc<AlgebraSpec<R>>) -> Result<Option<Witness>, AlgebraError> {
    Ok(check_multilinear_identity(alg, &IdentitySpec::associative())?.witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::math::Rational;

    #[test]
    fn multilinearity_enforced() {
        let bad = Term {
            coeff: 1,
            sign: SignRule::Plus,
            pattern: Pattern::mul(x(0), x(0)),
        };
        assert!(IdentitySpec::new("sq", 1, vec![bad], None).is_err());
    }

    #[test]
    fn matrix_rs_is_right_symmetric_not_associative() {
        let a = Arc::new(catalog::matrix_rs::<Rational>(2, &()).unwrap());
        let rs = check_multilinear_identity(&a, &IdentitySpec::right_symmetric()).unwrap();
        assert!(rs.holds());
        assert_eq!(rs.tuples_checked, 216);
        let assoc = check_multilinear_identity(&a, &IdentitySpec::associative()).unwrap();
        assert_eq!(assoc.verdict, Verdict::Fails);
        let w = assoc.witness.unwrap();
        let e = |i| Element::basis(&a, i);
        let d = Element::associator(&e(w.indices[0]), &e(w.indices[1]), &e(w.indices[2])).unwrap();
        assert!(!d.is_zero());
        assert_eq!(d.to_string(), w.defect);
    }

    #[test]
    fn super_identity_needs_grading() {
        let a = Arc::new(catalog::matrix_rs::<Rational>(2, &()).unwrap());
        assert!(matches!(check_super_right_alternative(&a), Err(AlgebraError::Ungraded(_))));
    }

    #[test]
    fn b_nn_right_alternative_and_abelian() {
        let a = Arc::new(catalog::b_nn::<Rational>(3, &()).unwrap());
        assert!(check_super_right_alternative(&a).unwrap().holds());
        assert!(check_abelian_type(&a).unwrap().holds());
    }

    #[test]
    fn randomized_agrees() {
        let a = catalog::matrix_rs::<Rational>(2, &()).unwrap();
        let opts = RandomCheckOptions {
            trials: 50,
            ..Default::default()
        };
        assert!(randomized_check(&a, &IdentitySpec::right_symmetric(), &opts).unwrap().holds());
        let r = randomized_check(&a, &IdentitySpec::associative(), &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let zero = RandomCheckOptions { trials: 0, ..opts };
        let r = randomized_check(&a, &IdentitySpec::associative(), &zero).unwrap();
        assert!(r.holds());
        assert_eq!(r.tuples_checked, 0);
    }

    #[test]
    fn small_primes_refused() {
        let a = catalog::matrix_rs::<Rational>(2, &()).unwrap();
        let opts = RandomCheckOptions {
            prime: 3,
            ..Default::default()
        };
        assert!(randomized_check(&a, &IdentitySpec::right_symmetric(), &opts).is_err());
        let ok = RandomCheckOptions {
            allow_small_prime: true,
            ..opts
        };
        assert!(randomized_check(&a, &IdentitySpec::right_symmetric(), &ok).is_ok());
    }
}
