//! JSON algebra files.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CliError, DynAlgebra};
use crate::algebra::{AlgebraSpec, Product};
use crate::math::{Fp, Polynomial, PrimeModulus, Rational, RationalFunction, Ring, ScalarExpr, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingDescriptor {
    Rationals,
    Polynomial { variables: Vec<String> },
    RationalFunction { variables: Vec<String> },
    PrimeField { p: u64 },
}

/// A coefficient: an exact-math literal string, or a plain integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn text(&self) -> String {
        match self {
            Coeff::Int(n) => n.to_string(),
            Coeff::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub k: usize,
    pub coeff: Coeff,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductRecord {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub ring: RingDescriptor,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub labels: Vec<String>,
    pub products: Vec<ProductRecord>,
}

/// Coefficient rings that can appear in algebra files.
pub trait FileRing: Ring {
    fn descriptor(ctx: &Self::Ctx) -> RingDescriptor;
    fn parse_coeff(ctx: &Self::Ctx, e: &ScalarExpr) -> Result<Self, CliError>;
}

impl FileRing for Rational {
    fn descriptor(_: &()) -> RingDescriptor {
        RingDescriptor::Rationals
    }

    fn parse_coeff(ctx: &(), e: &ScalarExpr) -> Result<Self, CliError> {
        Ok(e.eval_in(ctx, &Default::default())?)
    }
}

impl FileRing for Polynomial {
    fn descriptor(ctx: &Universe) -> RingDescriptor {
        RingDescriptor::Polynomial {
            variables: ctx.names().to_vec(),
        }
    }

    fn parse_coeff(ctx: &Universe, e: &ScalarExpr) -> Result<Self, CliError> {
        Ok(e.to_polynomial(ctx)?)
    }
}

impl FileRing for RationalFunction {
    fn descriptor(ctx: &Universe) -> RingDescriptor {
        RingDescriptor::RationalFunction {
            variables: ctx.names().to_vec(),
        }
    }

    fn parse_coeff(ctx: &Universe, e: &ScalarExpr) -> Result<Self, CliError> {
        Ok(e.eval_ratfunc(ctx)?)
    }
}

impl FileRing for Fp {
    fn descriptor(ctx: &PrimeModulus) -> RingDescriptor {
        RingDescriptor::PrimeField { p: ctx.get() }
    }

    fn parse_coeff(ctx: &PrimeModulus, e: &ScalarExpr) -> Result<Self, CliError> {
        Ok(e.eval_in(ctx, &Default::default())?)
    }
}

impl AlgebraFile {
    pub fn from_spec<R: FileRing>(spec: &AlgebraSpec<R>) -> Self {
        let mut products: Vec<ProductRecord> = Vec::new();
        for p in spec.products() {
            let text = p.coeff.to_string();
            let coeff = match text.parse::<i64>() {
                Ok(n) => Coeff::Int(n),
                Err(_) => Coeff::Text(text),
            };
            let term = TermRecord { k: p.k, coeff };
            match products.last_mut() {
                Some(last) if (last.i, last.j) == (p.i, p.j) => last.terms.push(term),
                _ => products.push(ProductRecord {
                    i: p.i,
                    j: p.j,
                    terms: vec![term],
                }),
            }
        }
        AlgebraFile {
            name: spec.name().to_string(),
            ring: R::descriptor(spec.ctx()),
            dim: spec.dim(),
            parity: spec.parity().to_vec(),
            labels: spec.labels().to_vec(),
            products,
        }
    }

    fn to_spec<R: FileRing>(&self, ctx: R::Ctx) -> Result<AlgebraSpec<R>, CliError> {
        if self.labels.len() != self.dim {
            return Err(CliError::Validation(format!(
                "dim is {} but {} labels are given",
                self.dim,
                self.labels.len()
            )));
        }
        let mut products = Vec::new();
        for rec in &self.products {
            for t in &rec.terms {
                let text = t.coeff.text();
                let e = ScalarExpr::parse(&text)
                    .map_err(|err| CliError::Validation(format!("coefficient `{text}` of ({}, {}, {}): {err}", rec.i, rec.j, t.k)))?;
                products.push(Product {
                    i: rec.i,
                    j: rec.j,
                    k: t.k,
                    coeff: R::parse_coeff(&ctx, &e)?,
                });
            }
        }
        AlgebraSpec::new(self.name.clone(), self.labels.clone(), self.parity.clone(), ctx, products)
            .map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn to_dyn(&self) -> Result<DynAlgebra, CliError> {
        Ok(match &self.ring {
            RingDescriptor::Rationals => DynAlgebra::Rational(Arc::new(self.to_spec(())?)),
            RingDescriptor::Polynomial { variables } => {
                DynAlgebra::Polynomial(Arc::new(self.to_spec(Universe::new(variables.clone())?)?))
            }
            RingDescriptor::RationalFunction { variables } => {
                DynAlgebra::Symbolic(Arc::new(self.to_spec(Universe::new(variables.clone())?)?))
            }
            RingDescriptor::PrimeField { p } => DynAlgebra::Modular(Arc::new(self.to_spec(PrimeModulus::new(*p)?)?)),
        })
    }
}

/// Parses and validates an algebra file.
pub fn parse_algebra_file(bytes: &[u8]) -> Result<DynAlgebra, CliError> {
    let file: AlgebraFile = serde_json::from_slice(bytes).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    file.to_dyn()
}

pub fn to_json(file: &AlgebraFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("algebra files serialize");
    s.push('\n');
    s
}
