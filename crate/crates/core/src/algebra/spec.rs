use std::collections::BTreeMap;

use super::AlgebraError;
use crate::math::{Fp, MathError, PrimeModulus, Ring, Specialize};

/// One nonzero structure constant: `e_i * e_j` has coefficient `coeff` on `e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product<R> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: R,
}

/// Structure constants of a finite-dimensional algebra over `R`.
///
/// Products are stored per ordered basis pair as a sparse list sorted by
/// output index. The parity vector is all zeros for ungraded algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec<R: Ring> {
    name: String,
    labels: Vec<String>,
    parity: Vec<u8>,
    ctx: R::Ctx,
    table: Vec<Vec<(usize, R)>>,
}

impl<R: Ring> AlgebraSpec<R> {
    /// Builds and validates a spec. Repeated `(i, j, k)` entries are summed;
    /// entries that cancel to zero are dropped.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        parity: Vec<u8>,
        ctx: R::Ctx,
        products: impl IntoIterator<Item = Product<R>>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if parity.len() != dim {
            return Err(AlgebraError::Length {
                what: "parity entries",
                expected: dim,
                found: parity.len(),
            });
        }
        if let Some(&p) = parity.iter().find(|&&p| p > 1) {
            return Err(AlgebraError::ParityValue(p));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        let mut acc: BTreeMap<(usize, usize, usize), R> = BTreeMap::new();
        for Product { i, j, k, coeff } in products {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
            }
            if coeff.context() != ctx {
                return Err(MathError::DomainMismatch(format!(
                    "coefficient of ({i},{j},{k}) is over {:?}, algebra is over {:?}",
                    coeff.context(),
                    ctx
                ))
                .into());
            }
            match acc.get_mut(&(i, j, k)) {
                Some(c) => *c = c.add(&coeff),
                None => {
                    acc.insert((i, j, k), coeff);
                }
            }
        }
        let mut table = vec![Vec::new(); dim * dim];
        for ((i, j, k), c) in acc {
            if c.is_zero() {
                continue;
            }
            if parity[k] != (parity[i] ^ parity[j]) {
                return Err(AlgebraError::Grading { i, j, k });
            }
            table[i * dim + j].push((k, c));
        }
        Ok(AlgebraSpec {
            name: name.into(),
            labels,
            parity,
            ctx,
            table,
        })
    }

    /// Builds a spec from a function giving the full coordinate vector of
    /// `e_i * e_j`.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        parity: Vec<u8>,
        ctx: R::Ctx,
        mut product: impl FnMut(usize, usize) -> Vec<R>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut products = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(AlgebraError::Length {
                        what: "product coordinates",
                        expected: dim,
                        found: v.len(),
                    });
                }
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        products.push(Product { i, j, k, coeff: c });
                    }
                }
            }
        }
        Self::new(name, labels, parity, ctx, products)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn is_graded(&self) -> bool {
        self.parity.contains(&1)
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    /// Sparse coordinates of `e_i * e_j`, sorted by output index.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, R)] {
        &self.table[i * self.dim() + j]
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn products(&self) -> impl Iterator<Item = Product<R>> + '_ {
        let dim = self.dim();
        self.table.iter().enumerate().flat_map(move |(ij, row)| {
            row.iter().map(move |(k, c)| Product {
                i: ij / dim,
                j: ij % dim,
                k: *k,
                coeff: c.clone(),
            })
        })
    }

    pub fn nonzero_products(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    /// True when every product of basis vectors vanishes.
    pub fn is_zero_algebra(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Applies `f` to every structure constant, producing a spec over another
    /// ring. Constants mapped to zero are dropped.
    pub fn try_map<S: Ring>(
        &self,
        ctx: S::Ctx,
        mut f: impl FnMut(&R) -> Result<S, MathError>,
    ) -> Result<AlgebraSpec<S>, AlgebraError> {
        let mut products = Vec::with_capacity(self.nonzero_products());
        for p in self.products() {
            let coeff = f(&p.coeff)?;
            products.push(Product {
                i: p.i,
                j: p.j,
                k: p.k,
                coeff,
            });
        }
        AlgebraSpec::new(self.name.clone(), self.labels.clone(), self.parity.clone(), ctx, products)
    }
}

impl<R: Specialize> AlgebraSpec<R> {
    /// Image of the structure constants in `GF(p)` at a point for the
    /// coefficient ring's indeterminates.
    pub fn specialize(&self, modulus: PrimeModulus, point: &[Fp]) -> Result<AlgebraSpec<Fp>, AlgebraError> {
        self.try_map(modulus, |c| c.specialize(modulus, point))
    }
}
