use std::fmt;

use super::gcd::gcd;
use super::{impl_ring_ops, Field, MathError, Polynomial, Rational, Ring, Universe};

/// Quotient of two polynomials in lowest terms.
///
/// Canonical form: `gcd(numerator, denominator) = 1` and the denominator is
/// monic in the graded-lex order. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, MathError> {
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        num.guard(&den)?;
        Ok(Self::reduce(num, den))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.universe());
        RationalFunction { num: p, den }
    }

    pub fn var(universe: &Universe, name: &str) -> Result<Self, MathError> {
        Ok(Self::from_polynomial(Polynomial::var(universe, name)?))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn universe(&self) -> &Universe {
        self.num.universe()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_polynomial(&self) -> Result<Polynomial, MathError> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(MathError::NotPolynomial(self.to_string()))
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Degree of the numerator minus degree of the denominator in `var`.
    pub fn degree_in(&self, var: usize) -> i64 {
        self.num.degree_in(var) as i64 - self.den.degree_in(var) as i64
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.universe());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero(num.universe());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.try_div(&g).expect("gcd divides numerator"),
                    den.try_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::normalize(num, den)
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip().expect("nonzero denominator");
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Evaluates at a point of a field.
    pub fn eval_with<F: Field>(
        &self,
        ctx: &F::Ctx,
        value: impl Fn(usize) -> Result<F, MathError> + Copy,
    ) -> Result<F, MathError> {
        let n = self.num.eval_with(ctx, value)?;
        let d = self.den.eval_with(ctx, value)?;
        if d.is_zero() {
            return Err(if F::characteristic(ctx) > 0 {
                MathError::Characteristic {
                    p: F::characteristic(ctx),
                }
            } else {
                MathError::DivisionByZero
            });
        }
        n.div(&d)
    }
}

impl Ring for RationalFunction {
    type Ctx = Universe;

    fn zero(ctx: &Universe) -> Self {
        RationalFunction {
            num: Polynomial::zero(ctx),
            den: Polynomial::one(ctx),
        }
    }

    fn one(ctx: &Universe) -> Self {
        RationalFunction {
            num: Polynomial::one(ctx),
            den: Polynomial::one(ctx),
        }
    }

    fn from_rational(ctx: &Universe, q: &Rational) -> Result<Self, MathError> {
        Ok(Self::from_polynomial(Polynomial::constant(ctx, q.clone())))
    }

    fn context(&self) -> Universe {
        self.num.universe().clone()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            // gcd(a + c, b) may be nontrivial
            return Self::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        if self.den.is_one() {
            // gcd(a*d + c, d) = gcd(c, d) = 1
            return RationalFunction {
                num: self.num.mul(&rhs.den).add(&rhs.num),
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return RationalFunction {
                num: self.num.add(&rhs.num.mul(&self.den)),
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &rhs.den);
        let b1 = self.den.try_div(&g).expect("gcd divides");
        let d1 = rhs.den.try_div(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        let den = b1.mul(&rhs.den);
        if g.is_one() {
            Self::normalize(num, den)
        } else {
            Self::reduce(num, den)
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.universe());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction {
                num: self.num.mul(&rhs.num),
                den: self.den.clone(),
            };
        }
        // (a/b)(c/d) with gcd(a,d) and gcd(c,b) cancelled first
        let cancel = |n: &Polynomial, d: &Polynomial| -> (Polynomial, Polynomial) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.try_div(&g).expect("gcd divides"), d.try_div(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Self::normalize(a.mul(&c), b.mul(&d))
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Field for RationalFunction {
    fn inv(&self) -> Result<Self, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn characteristic(_: &Universe) -> u64 {
        0
    }
}

impl_ring_ops!(RationalFunction);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial| {
            if p.num_terms() == 1 && !p.leading_coeff().is_negative() {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        // A denominator must be a single factor to survive `/` precedence.
        let den = self.den.to_string();
        let den = if den.contains(['*', '/', ' ', '-']) { format!("({den})") } else { den };
        write!(f, "{}/{den}", wrap(&self.num))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
