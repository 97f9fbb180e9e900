use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{impl_ring_ops, Field, MathError, Rational, Ring};

#[derive(Debug)]
struct UniverseInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// The ordered list of variable names shared by every polynomial of one
/// computation. Variable 0 is the most significant in the monomial order.
#[derive(Clone)]
pub struct Universe(Arc<UniverseInner>);

impl Universe {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, MathError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(MathError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Universe(Arc::new(UniverseInner { names, index })))
    }

    pub fn empty() -> Self {
        Universe::new(Vec::<String>::new()).expect("empty universe")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe{:?}", self.0.names)
    }
}

/// Exponent vector, ordered graded-lexicographically: higher total degree is
/// greater, ties broken by the exponent of the lowest-index variable first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial::from_exponents(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: other.degree - self.degree,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept strictly descending in the monomial order with no zero
/// coefficients, so equal polynomials have identical term lists.
#[derive(Clone)]
pub struct Polynomial {
    universe: Universe,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(universe: &Universe) -> Self {
        Polynomial {
            universe: universe.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(universe: &Universe, c: Rational) -> Self {
        let mut p = Polynomial::zero(universe);
        if !c.is_zero() {
            p.terms.push((Monomial::one(universe.len()), c));
        }
        p
    }

    pub fn var(universe: &Universe, name: &str) -> Result<Self, MathError> {
        let i = universe
            .index_of(name)
            .ok_or_else(|| MathError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var_index(universe, i))
    }

    pub fn var_index(universe: &Universe, i: usize) -> Self {
        Polynomial {
            universe: universe.clone(),
            terms: vec![(Monomial::var(universe.len(), i, 1), Rational::from(1))],
        }
    }

    pub fn monomial(universe: &Universe, m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(universe);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(universe: &Universe, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps.len(), universe.len(), "exponent vector length");
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial {
            universe: universe.clone(),
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::from(0)),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps[var]).min().unwrap_or(0)
    }

    /// Indices of the variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.universe.len())
            .filter(|&v| self.terms.iter().any(|(m, _)| m.exps[v] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.universe);
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip().expect("nonzero leading coefficient")),
        }
    }

    fn merge(&self, rhs: &Polynomial, negate: bool) -> Polynomial {
        self.check(rhs);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: out,
        }
    }

    fn check(&self, rhs: &Polynomial) {
        assert!(
            self.universe == rhs.universe,
            "domain mismatch: polynomials over {:?} and {:?}",
            self.universe,
            rhs.universe
        );
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn try_div(&self, d: &Polynomial) -> Option<Polynomial> {
        self.check(d);
        let (lm, lc) = d.terms.first()?;
        if self.terms.is_empty() {
            return Some(Polynomial::zero(&self.universe));
        }
        if d.is_monomial() {
            let inv = lc.recip().ok()?;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                terms.push((lm.quotient_of(m), c.mul(&inv)));
            }
            return Some(Polynomial {
                universe: self.universe.clone(),
                terms,
            });
        }
        let inv = lc.recip().ok()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.mul(&inv);
            rem = rem.merge(&d.mul_term(&qm, &qc), true);
            quot.push((qm, qc));
        }
        Some(Polynomial {
            universe: self.universe.clone(),
            terms: quot,
        })
    }

    /// Coefficients with respect to one variable: entry `k` holds the
    /// coefficient of `var^k`, itself free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[var] as usize;
            let mut exps = m.exps.to_vec();
            exps[var] = 0;
            buckets[k].push((Monomial::from_exponents(exps), c.clone()));
        }
        // Removing one variable's exponent can reorder terms.
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                Polynomial {
                    universe: self.universe.clone(),
                    terms: ts,
                }
            })
            .collect()
    }

    /// Leading coefficient and degree with respect to one variable.
    pub fn lead_in(&self, var: usize) -> (u32, Polynomial) {
        let deg = self.degree_in(var);
        let mut ts: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps[var] == deg)
            .map(|(m, c)| {
                let mut exps = m.exps.to_vec();
                exps[var] = 0;
                (Monomial::from_exponents(exps), c.clone())
            })
            .collect();
        ts.sort_by(|a, b| b.0.cmp(&a.0));
        (
            deg,
            Polynomial {
                universe: self.universe.clone(),
                terms: ts,
            },
        )
    }

    pub fn var_power(universe: &Universe, var: usize, e: u32) -> Polynomial {
        Polynomial::monomial(universe, Monomial::var(universe.len(), var, e), Rational::from(1))
    }

    /// Evaluates at a point; `value(i)` supplies the value of variable `i`.
    pub fn eval_with<F: Field>(
        &self,
        ctx: &F::Ctx,
        value: impl Fn(usize) -> Result<F, MathError>,
    ) -> Result<F, MathError> {
        let support = self.support();
        let mut vals: Vec<Option<F>> = vec![None; self.universe.len()];
        for v in support {
            vals[v] = Some(value(v)?);
        }
        let mut acc = F::zero(ctx);
        for (m, c) in &self.terms {
            let mut t = F::from_rational(ctx, c)?;
            for (v, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&vals[v].as_ref().expect("support value").pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Re-expresses this polynomial over a larger universe containing all of
    /// its variables.
    pub fn embed(&self, target: &Universe) -> Result<Polynomial, MathError> {
        let map: Vec<usize> = self
            .universe
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| MathError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        Ok(Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; target.len()];
                for (i, &e) in m.exps.iter().enumerate() {
                    exps[map[i]] = e;
                }
                (Monomial::from_exponents(exps), c.clone())
            }),
        ))
    }
}

impl Ring for Polynomial {
    type Ctx = Universe;

    fn zero(ctx: &Universe) -> Self {
        Polynomial::zero(ctx)
    }

    fn one(ctx: &Universe) -> Self {
        Polynomial::constant(ctx, Rational::from(1))
    }

    fn from_rational(ctx: &Universe, q: &Rational) -> Result<Self, MathError> {
        Ok(Polynomial::constant(ctx, q.clone()))
    }

    fn context(&self) -> Universe {
        self.universe.clone()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Polynomial::zero(&self.universe);
        }
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn neg(&self) -> Self {
        Polynomial {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl_ring_ops!(Polynomial);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.universe.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.universe.name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
