//! Scalar expressions over named variables.
//!
//! Grammar (whitespace ignored, `−` accepted for `-`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | ident | '(' expr ')'
//! ```
//!
//! An expression is evaluated into any [`Field`] given a value for each
//! variable, or into a [`Polynomial`] when it contains no division by a
//! non-constant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use super::{Field, MathError, Polynomial, Rational, RationalFunction, Universe};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarExpr {
    Const(Rational),
    Var(String),
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, i32),
}

impl ScalarExpr {
    pub fn parse(src: &str) -> Result<Self, MathError> {
        let mut p = Parser {
            src,
            chars: src.char_indices().peekable(),
        };
        let e = p.expr()?;
        p.skip_ws();
        if let Some(&(pos, c)) = p.chars.peek() {
            return Err(MathError::Parse {
                pos,
                msg: format!("unexpected `{c}`"),
            });
        }
        Ok(e)
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::Const(Rational::from(n))
    }

    pub fn var(name: impl Into<String>) -> Self {
        ScalarExpr::Var(name.into())
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            ScalarExpr::Const(_) => {}
            ScalarExpr::Var(v) => {
                out.insert(v.clone());
            }
            ScalarExpr::Neg(a) | ScalarExpr::Pow(a, _) => a.collect_vars(out),
            ScalarExpr::Add(a, b) | ScalarExpr::Sub(a, b) | ScalarExpr::Mul(a, b) | ScalarExpr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Renames variables; names missing from `map` are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> ScalarExpr {
        let r = |e: &ScalarExpr| Box::new(e.rename(map));
        match self {
            ScalarExpr::Const(c) => ScalarExpr::Const(c.clone()),
            ScalarExpr::Var(v) => ScalarExpr::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            ScalarExpr::Neg(a) => ScalarExpr::Neg(r(a)),
            ScalarExpr::Pow(a, e) => ScalarExpr::Pow(r(a), *e),
            ScalarExpr::Add(a, b) => ScalarExpr::Add(r(a), r(b)),
            ScalarExpr::Sub(a, b) => ScalarExpr::Sub(r(a), r(b)),
            ScalarExpr::Mul(a, b) => ScalarExpr::Mul(r(a), r(b)),
            ScalarExpr::Div(a, b) => ScalarExpr::Div(r(a), r(b)),
        }
    }

    /// Evaluates in a field; `lookup` supplies variable values.
    pub fn eval<F: Field>(&self, ctx: &F::Ctx, lookup: &dyn Fn(&str) -> Option<F>) -> Result<F, MathError> {
        Ok(match self {
            ScalarExpr::Const(c) => F::from_rational(ctx, c)?,
            ScalarExpr::Var(v) => lookup(v).ok_or_else(|| MathError::IncompleteAssignment(v.clone()))?,
            ScalarExpr::Neg(a) => a.eval(ctx, lookup)?.neg(),
            ScalarExpr::Add(a, b) => a.eval(ctx, lookup)?.add(&b.eval(ctx, lookup)?),
            ScalarExpr::Sub(a, b) => a.eval(ctx, lookup)?.sub(&b.eval(ctx, lookup)?),
            ScalarExpr::Mul(a, b) => a.eval(ctx, lookup)?.mul(&b.eval(ctx, lookup)?),
            ScalarExpr::Div(a, b) => {
                let d = b.eval(ctx, lookup)?;
                if d.is_zero() && F::characteristic(ctx) > 0 {
                    return Err(MathError::Characteristic {
                        p: F::characteristic(ctx),
                    });
                }
                a.eval(ctx, lookup)?.div(&d)?
            }
            ScalarExpr::Pow(a, e) => {
                let base = a.eval(ctx, lookup)?;
                if *e >= 0 {
                    base.pow(*e as u32)
                } else {
                    base.inv()?.pow(e.unsigned_abs())
                }
            }
        })
    }

    /// Evaluates in an assignment map.
    pub fn eval_in<F: Field>(&self, ctx: &F::Ctx, values: &BTreeMap<String, F>) -> Result<F, MathError> {
        self.eval(ctx, &|v| values.get(v).cloned())
    }

    /// Evaluates symbolically, each variable standing for itself.
    pub fn eval_ratfunc(&self, universe: &Universe) -> Result<RationalFunction, MathError> {
        for v in self.variables() {
            if universe.index_of(&v).is_none() {
                return Err(MathError::UnknownVariable(v));
            }
        }
        self.eval(universe, &|v| RationalFunction::var(universe, v).ok())
    }

    pub fn to_polynomial(&self, universe: &Universe) -> Result<Polynomial, MathError> {
        self.eval_ratfunc(universe)?.to_polynomial()
    }

    fn prec(&self) -> u8 {
        match self {
            ScalarExpr::Add(..) | ScalarExpr::Sub(..) => 1,
            ScalarExpr::Mul(..) | ScalarExpr::Div(..) => 2,
            ScalarExpr::Neg(_) => 3,
            ScalarExpr::Pow(..) => 4,
            ScalarExpr::Const(c) if !c.is_integer() || c.is_negative() => 2,
            ScalarExpr::Const(_) | ScalarExpr::Var(_) => 5,
        }
    }
}

impl From<Rational> for ScalarExpr {
    fn from(q: Rational) -> Self {
        ScalarExpr::Const(q)
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &ScalarExpr, min: u8, f: &mut fmt::Formatter<'_>| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            ScalarExpr::Const(c) => write!(f, "{c}"),
            ScalarExpr::Var(v) => write!(f, "{v}"),
            ScalarExpr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            ScalarExpr::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            ScalarExpr::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 2, f)
            }
            ScalarExpr::Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 3, f)
            }
            ScalarExpr::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "/")?;
                wrap(b, 3, f)
            }
            ScalarExpr::Pow(a, e) => {
                wrap(a, 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().map(|&(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
    }

    fn pos(&mut self) -> usize {
        self.peek().map(|p| p.0).unwrap_or(self.src.len())
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> Result<T, MathError> {
        Err(MathError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<ScalarExpr, MathError> {
        let mut lhs = self.term()?;
        while let Some((_, c)) = self.peek() {
            match c {
                '+' => {
                    self.chars.next();
                    lhs = ScalarExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                '-' => {
                    self.chars.next();
                    lhs = ScalarExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ScalarExpr, MathError> {
        let mut lhs = self.unary()?;
        while let Some((_, c)) = self.peek() {
            match c {
                '*' => {
                    self.chars.next();
                    lhs = ScalarExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                '/' => {
                    self.chars.next();
                    lhs = ScalarExpr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ScalarExpr, MathError> {
        match self.peek() {
            Some((_, '-')) => {
                self.chars.next();
                Ok(ScalarExpr::Neg(Box::new(self.unary()?)))
            }
            Some((_, '+')) => {
                self.chars.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ScalarExpr, MathError> {
        let base = self.atom()?;
        if let Some((_, '^')) = self.peek() {
            self.chars.next();
            let neg = if let Some((_, '-')) = self.peek() {
                self.chars.next();
                true
            } else {
                false
            };
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return self.err("expected integer exponent");
            }
            let e: i32 = match digits.parse() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(ScalarExpr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if pred(c) {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<ScalarExpr, MathError> {
        match self.peek() {
            Some((_, '(')) => {
                self.chars.next();
                let e = self.expr()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.chars.next();
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().expect("digits");
                Ok(ScalarExpr::Const(Rational::from(n)))
            }
            Some((_, c)) if c.is_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                Ok(ScalarExpr::Var(name))
            }
            Some((_, c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}
