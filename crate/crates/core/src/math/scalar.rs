use std::collections::BTreeMap;
use std::fmt;

use super::{Field, Fp, MathError, Polynomial, PrimeModulus, Rational, RationalFunction, Ring};

/// A scalar of any supported coefficient kind, for code that picks the ring
/// at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElement {
    Rational(Rational),
    Polynomial(Polynomial),
    RationalFunction(RationalFunction),
    Prime(Fp),
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Rational(x) => write!(f, "{x}"),
            RingElement::Polynomial(x) => write!(f, "{x}"),
            RingElement::RationalFunction(x) => write!(f, "{x}"),
            RingElement::Prime(x) => write!(f, "{x}"),
        }
    }
}

impl RingElement {
    pub fn kind(&self) -> &'static str {
        match self {
            RingElement::Rational(_) => "rational",
            RingElement::Polynomial(_) => "polynomial",
            RingElement::RationalFunction(_) => "rational-function",
            RingElement::Prime(_) => "prime-field",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Negates the first operand; the second is ignored.
    Neg,
}

fn apply<R: Ring>(op: ArithOp, a: &R, b: &R) -> Result<R, MathError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Neg => Ok(a.neg()),
    }
}

/// Ring arithmetic on run-time-typed scalars. Operands of different kinds,
/// or of the same kind over different rings, are a domain mismatch.
pub fn ring_arith(op: ArithOp, a: &RingElement, b: &RingElement) -> Result<RingElement, MathError> {
    use RingElement as E;
    if op == ArithOp::Neg {
        return Ok(match a {
            E::Rational(x) => E::Rational(x.neg()),
            E::Polynomial(x) => E::Polynomial(x.neg()),
            E::RationalFunction(x) => E::RationalFunction(x.neg()),
            E::Prime(x) => E::Prime(x.neg()),
        });
    }
    Ok(match (a, b) {
        (E::Rational(x), E::Rational(y)) => E::Rational(apply(op, x, y)?),
        (E::Polynomial(x), E::Polynomial(y)) => E::Polynomial(apply(op, x, y)?),
        (E::RationalFunction(x), E::RationalFunction(y)) => E::RationalFunction(apply(op, x, y)?),
        (E::Prime(x), E::Prime(y)) => E::Prime(apply(op, x, y)?),
        _ => {
            return Err(MathError::DomainMismatch(format!(
                "{} vs {}",
                a.kind(),
                b.kind()
            )))
        }
    })
}

pub fn frac_div(a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction, MathError> {
    a.checked_div(b)
}

/// Substitutes field values for every variable of `poly`.
///
/// Errors when a variable that occurs in `poly` has no value, or when the
/// field's characteristic divides a coefficient denominator.
pub fn eval_at<F: Field>(
    poly: &Polynomial,
    ctx: &F::Ctx,
    assignment: &BTreeMap<String, F>,
) -> Result<F, MathError> {
    let universe = poly.universe().clone();
    poly.eval_with(ctx, |i| {
        let name = universe.name(i);
        assignment
            .get(name)
            .cloned()
            .ok_or_else(|| MathError::IncompleteAssignment(name.to_string()))
    })
}

/// Rings whose elements can be sent to a prime field once values for their
/// indeterminates are fixed.
pub trait Specialize: Ring {
    /// Number of indeterminates, i.e. the length of a specialization point.
    fn indeterminates(ctx: &Self::Ctx) -> usize;

    /// Image in `GF(p)` at `point`. Errors when `p` divides a denominator or
    /// a denominator vanishes at the point.
    fn specialize(&self, modulus: PrimeModulus, point: &[Fp]) -> Result<Fp, MathError>;
}

impl Specialize for Rational {
    fn indeterminates(_: &()) -> usize {
        0
    }

    fn specialize(&self, modulus: PrimeModulus, _: &[Fp]) -> Result<Fp, MathError> {
        Fp::from_rational(&modulus, self)
    }
}

impl Specialize for Fp {
    fn indeterminates(_: &PrimeModulus) -> usize {
        0
    }

    fn specialize(&self, modulus: PrimeModulus, _: &[Fp]) -> Result<Fp, MathError> {
        if self.modulus() != modulus {
            return Err(MathError::DomainMismatch(format!(
                "GF({}) vs GF({})",
                self.modulus().get(),
                modulus.get()
            )));
        }
        Ok(*self)
    }
}

impl Specialize for Polynomial {
    fn indeterminates(ctx: &super::Universe) -> usize {
        ctx.len()
    }

    fn specialize(&self, modulus: PrimeModulus, point: &[Fp]) -> Result<Fp, MathError> {
        self.eval_with(&modulus, |i| Ok(point[i]))
    }
}

impl Specialize for RationalFunction {
    fn indeterminates(ctx: &super::Universe) -> usize {
        ctx.len()
    }

    fn specialize(&self, modulus: PrimeModulus, point: &[Fp]) -> Result<Fp, MathError> {
        self.eval_with(&modulus, |i| Ok(point[i]))
    }
}
