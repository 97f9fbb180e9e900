use std::fmt;
use std::sync::Arc;

use super::{AlgebraError, AlgebraSpec};
use crate::math::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    Even,
    Odd,
    Mixed,
    Zero,
}

/// A vector of an algebra, in coordinates of its basis.
#[derive(Clone)]
pub struct Element<R: Ring> {
    alg: Arc<AlgebraSpec<R>>,
    coords: Vec<R>,
}

impl<R: Ring> Element<R> {
    pub fn zero(alg: &Arc<AlgebraSpec<R>>) -> Self {
        Element {
            alg: alg.clone(),
            coords: vec![R::zero(alg.ctx()); alg.dim()],
        }
    }

    /// `c * e_i`.
    pub fn basis_scaled(alg: &Arc<AlgebraSpec<R>>, i: usize, c: R) -> Self {
        let mut e = Self::zero(alg);
        e.coords[i] = c;
        e
    }

    pub fn basis(alg: &Arc<AlgebraSpec<R>>, i: usize) -> Self {
        Self::basis_scaled(alg, i, R::one(alg.ctx()))
    }

    pub fn from_coords(alg: &Arc<AlgebraSpec<R>>, coords: Vec<R>) -> Result<Self, AlgebraError> {
        if coords.len() != alg.dim() {
            return Err(AlgebraError::Length {
                what: "coordinates",
                expected: alg.dim(),
                found: coords.len(),
            });
        }
        for c in &coords {
            if c.context() != *alg.ctx() {
                return Err(crate::math::MathError::DomainMismatch(format!(
                    "coordinate over {:?}, algebra over {:?}",
                    c.context(),
                    alg.ctx()
                ))
                .into());
            }
        }
        Ok(Element {
            alg: alg.clone(),
            coords,
        })
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec<R>> {
        &self.alg
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &R {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }

    fn same_algebra(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch(
                self.alg.name().to_string(),
                other.alg.name().to_string(),
            ))
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        Ok(Element {
            alg: self.alg.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        Element {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(Ring::neg).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Element {
            alg: self.alg.clone(),
            coords: self
                .coords
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { c.mul(x) })
                .collect(),
        }
    }

    /// Product by bilinear extension of the structure constants.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        let dim = self.alg.dim();
        let mut acc: Vec<Option<R>> = vec![None; dim];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let row = self.alg.product(i, j);
                if row.is_empty() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in row {
                    let t = if c.is_one() { ab.clone() } else { ab.mul(c) };
                    acc[*k] = Some(match acc[*k].take() {
                        Some(s) => s.add(&t),
                        None => t,
                    });
                }
            }
        }
        let zero = R::zero(self.alg.ctx());
        Ok(Element {
            alg: self.alg.clone(),
            coords: acc.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect(),
        })
    }

    /// `(x, y, z) = (xy)z - x(yz)`.
    pub fn associator(x: &Self, y: &Self, z: &Self) -> Result<Self, AlgebraError> {
        x.multiply(y)?.multiply(z)?.sub(&x.multiply(&y.multiply(z)?)?)
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(x: &Self, y: &Self) -> Result<Self, AlgebraError> {
        x.multiply(y)?.sub(&y.multiply(x)?)
    }

    pub fn parity_class(&self) -> ParityClass {
        let parity = self.alg.parity();
        let mut even = false;
        let mut odd = false;
        for (c, &p) in self.coords.iter().zip(parity) {
            if !c.is_zero() {
                if p == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (false, false) => ParityClass::Zero,
            (true, false) => ParityClass::Even,
            (false, true) => ParityClass::Odd,
            (true, true) => ParityClass::Mixed,
        }
    }

    /// Component of parity `p` (0 or 1).
    pub fn homogeneous_part(&self, p: u8) -> Self {
        let zero = R::zero(self.alg.ctx());
        Element {
            alg: self.alg.clone(),
            coords: self
                .coords
                .iter()
                .zip(self.alg.parity())
                .map(|(c, &q)| if q == p { c.clone() } else { zero.clone() })
                .collect(),
        }
    }

    /// Moves the element to another spec of the same dimension, mapping each
    /// coordinate with `f`.
    pub fn try_map<S: Ring, E>(
        &self,
        target: &Arc<AlgebraSpec<S>>,
        mut f: impl FnMut(&R) -> Result<S, E>,
    ) -> Result<Element<S>, AlgebraError>
    where
        AlgebraError: From<E>,
    {
        let coords = self.coords.iter().map(&mut f).collect::<Result<Vec<_>, E>>()?;
        Element::from_coords(target, coords)
    }
}

impl<R: Ring> PartialEq for Element<R> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other).is_ok() && self.coords == other.coords
    }
}

impl<R: Ring> Eq for Element<R> {}

impl<R: Ring> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.coords.iter().zip(self.alg.labels()) {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '/', '(']) => (true, rest.to_string()),
                _ => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if body == "1" {
                write!(f, "{label}")?;
            } else if body.contains(' ') || body.contains('/') {
                write!(f, "({body})*{label}")?;
            } else {
                write!(f, "{body}*{label}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.alg.name())
    }
}
