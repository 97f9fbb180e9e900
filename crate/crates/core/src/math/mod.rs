//! Exact scalar arithmetic and exact linear algebra.
//!
//! Four coefficient kinds are provided: [`Rational`], [`Polynomial`] (sparse,
//! multivariate, rational coefficients), [`RationalFunction`] (reduced
//! quotients of polynomials) and [`Fp`] (prime-field residues). All of them
//! implement [`Ring`]; the three fields also implement [`Field`], which is
//! what the linear-algebra and structure code is generic over.
//!
//! Values are immutable. Operations between values of different rings (two
//! polynomials over different variable universes, residues for different
//! primes) panic in the infallible trait methods and return
//! [`MathError::DomainMismatch`] from the `checked_*` variants.

use std::fmt;

pub mod expr;
pub mod gcd;
pub mod matrix;
pub mod poly;
pub mod prime_field;
pub mod ratfunc;
pub mod rational;
pub mod scalar;

pub use expr::ScalarExpr;
pub use matrix::{EchelonBasis, Matrix, Rref};
pub use poly::{Monomial, Polynomial, Universe};
pub use prime_field::{Fp, PrimeModulus, DEFAULT_PRIME};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use scalar::{eval_at, frac_div, ring_arith, ArithOp, RingElement, Specialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("incomplete assignment: no value for variable `{0}`")]
    IncompleteAssignment(String),
    #[error("characteristic {p} divides a denominator")]
    Characteristic { p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("shape error: {0}")]
    Shape(String),
}

/// A commutative ring with exact, canonical elements.
///
/// `Ctx` describes the ring itself (the variable universe of a polynomial
/// ring, the modulus of a prime field); two elements belong to the same ring
/// iff their contexts compare equal.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Result<Self, MathError>;
    fn context(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_rational(ctx, &Rational::from(n))
            .expect("integers embed in every supported ring")
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.context())
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.context() == other.context()
    }

    fn checked_add(&self, rhs: &Self) -> Result<Self, MathError> {
        self.guard(rhs)?;
        Ok(self.add(rhs))
    }

    fn checked_sub(&self, rhs: &Self) -> Result<Self, MathError> {
        self.guard(rhs)?;
        Ok(self.sub(rhs))
    }

    fn checked_mul(&self, rhs: &Self) -> Result<Self, MathError> {
        self.guard(rhs)?;
        Ok(self.mul(rhs))
    }

    #[doc(hidden)]
    fn guard(&self, rhs: &Self) -> Result<(), MathError> {
        if self.same_ring(rhs) {
            Ok(())
        } else {
            Err(MathError::DomainMismatch(format!(
                "{:?} vs {:?}",
                self.context(),
                rhs.context()
            )))
        }
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Result<Self, MathError>;

    /// 0 for the characteristic-zero fields.
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn div(&self, rhs: &Self) -> Result<Self, MathError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, MathError> {
        self.guard(rhs)?;
        self.div(rhs)
    }
}

/// Implements the `std::ops` arithmetic operators in terms of [`Ring`].
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::math::Ring::add(self, rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::math::Ring::add(&self, &rhs)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::math::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::math::Ring::sub(&self, &rhs)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::math::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::math::Ring::mul(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::math::Ring::neg(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::math::Ring::neg(&self)
            }
        }
    };
}
pub(crate) use impl_ring_ops;
