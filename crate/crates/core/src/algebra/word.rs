//! Nested product expressions over named algebra elements.
//!
//! Text syntax: juxtaposition is the product and associates to the left, so
//! `x y z` is `(x y) z`; parentheses group; `+` and `-` form sums; a scalar
//! multiplier in braces prefixes a term, as in `{-1/nu1^3}(f21 X)(nu1 f11)`.
//! Names are `[A-Za-z_][A-Za-z0-9_]*`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{AlgebraError, Element};
use crate::math::{Field, MathError, Rational, ScalarExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordTree {
    Leaf(String),
    Product(Box<WordTree>, Box<WordTree>),
    Sum(Vec<WordTree>),
    Scaled(ScalarExpr, Box<WordTree>),
}

/// Names and scalar values a word is evaluated against.
#[derive(Debug, Clone)]
pub struct WordEnv<F: Field> {
    pub ctx: F::Ctx,
    pub bindings: BTreeMap<String, Element<F>>,
    pub scalars: BTreeMap<String, F>,
}

impl<F: Field> WordEnv<F> {
    pub fn new(ctx: F::Ctx) -> Self {
        WordEnv {
            ctx,
            bindings: BTreeMap::new(),
            scalars: BTreeMap::new(),
        }
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Element<F>) {
        self.bindings.insert(name.into(), value);
    }

    pub fn scalar(&self, e: &ScalarExpr) -> Result<F, MathError> {
        e.eval_in(&self.ctx, &self.scalars)
    }
}

impl WordTree {
    pub fn leaf(name: impl Into<String>) -> Self {
        WordTree::Leaf(name.into())
    }

    pub fn product(l: WordTree, r: WordTree) -> Self {
        WordTree::Product(Box::new(l), Box::new(r))
    }

    pub fn scaled(c: ScalarExpr, t: WordTree) -> Self {
        WordTree::Scaled(c, Box::new(t))
    }

    pub fn parse(src: &str) -> Result<Self, AlgebraError> {
        let mut p = Parser { src, pos: 0 };
        let t = p.sum()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(t)
    }

    /// Leaf names, sorted.
    pub fn leaves(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut BTreeSet<String>) {
        match self {
            WordTree::Leaf(n) => {
                out.insert(n.clone());
            }
            WordTree::Product(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
            WordTree::Sum(ts) => ts.iter().for_each(|t| t.collect_leaves(out)),
            WordTree::Scaled(_, t) => t.collect_leaves(out),
        }
    }

    /// Renames leaves with `leaves` and scalar variables with `scalars`;
    /// names missing from a map are kept.
    pub fn rename(&self, leaves: &BTreeMap<String, String>, scalars: &BTreeMap<String, String>) -> WordTree {
        match self {
            WordTree::Leaf(n) => WordTree::Leaf(leaves.get(n).cloned().unwrap_or_else(|| n.clone())),
            WordTree::Product(l, r) => WordTree::product(l.rename(leaves, scalars), r.rename(leaves, scalars)),
            WordTree::Sum(ts) => WordTree::Sum(ts.iter().map(|t| t.rename(leaves, scalars)).collect()),
            WordTree::Scaled(c, t) => WordTree::scaled(c.rename(scalars), t.rename(leaves, scalars)),
        }
    }

    /// Evaluates the word: leaves are looked up, products multiply, sums add,
    /// and scalar multipliers are evaluated in the environment's field.
    pub fn evaluate<F: Field>(&self, env: &WordEnv<F>) -> Result<Element<F>, AlgebraError> {
        match self {
            WordTree::Leaf(n) => env
                .bindings
                .get(n)
                .cloned()
                .ok_or_else(|| AlgebraError::UnboundLeaf(n.clone())),
            WordTree::Product(l, r) => l.evaluate(env)?.multiply(&r.evaluate(env)?),
            WordTree::Sum(ts) => {
                let mut it = ts.iter();
                let first = it
                    .next()
                    .ok_or_else(|| AlgebraError::WordParse {
                        pos: 0,
                        msg: "empty sum".into(),
                    })?
                    .evaluate(env)?;
                it.try_fold(first, |acc, t| acc.add(&t.evaluate(env)?))
            }
            WordTree::Scaled(c, t) => {
                let v = t.evaluate(env)?;
                Ok(v.scale(&env.scalar(c)?))
            }
        }
    }
}

fn is_minus_one(c: &ScalarExpr) -> bool {
    matches!(c, ScalarExpr::Const(q) if *q == Rational::from(-1))
}

impl fmt::Display for WordTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordTree::Leaf(n) => f.write_str(n),
            WordTree::Product(l, r) => {
                let ls = match **l {
                    WordTree::Leaf(_) => l.to_string(),
                    _ => format!("({l})"),
                };
                let rs = match **r {
                    WordTree::Leaf(_) => r.to_string(),
                    _ => format!("({r})"),
                };
                let sep = if ls.ends_with(')') || rs.starts_with('(') { "" } else { " " };
                write!(f, "{ls}{sep}{rs}")
            }
            WordTree::Sum(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    match t {
                        WordTree::Scaled(c, inner) if is_minus_one(c) => {
                            let body = match **inner {
                                WordTree::Sum(_) | WordTree::Scaled(..) => format!("({inner})"),
                                _ => inner.to_string(),
                            };
                            if i == 0 {
                                write!(f, "-{body}")?;
                            } else {
                                write!(f, " - {body}")?;
                            }
                        }
                        WordTree::Sum(_) => {
                            if i > 0 {
                                f.write_str(" + ")?;
                            }
                            write!(f, "({t})")?;
                        }
                        _ => {
                            if i > 0 {
                                f.write_str(" + ")?;
                            }
                            write!(f, "{t}")?;
                        }
                    }
                }
                Ok(())
            }
            WordTree::Scaled(c, t) => {
                let body = match **t {
                    WordTree::Sum(_) | WordTree::Scaled(..) => format!("({t})"),
                    _ => t.to_string(),
                };
                if is_minus_one(c) {
                    write!(f, "-{body}")
                } else {
                    write!(f, "{{{c}}}{body}")
                }
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::WordParse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn sum(&mut self) -> Result<WordTree, AlgebraError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negate = false;
        if matches!(self.peek(), Some('-' | '\u{2212}')) {
            self.pos += self.peek().unwrap().len_utf8();
            negate = true;
        }
        loop {
            let t = self.term()?;
            terms.push(if negate { WordTree::scaled(ScalarExpr::int(-1), t) } else { t });
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(c @ ('-' | '\u{2212}')) => {
                    self.pos += c.len_utf8();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            WordTree::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<WordTree, AlgebraError> {
        self.skip_ws();
        let scalar = if self.peek() == Some('{') {
            let start = self.pos + 1;
            let end = self.src[start..]
                .find('}')
                .map(|i| start + i)
                .ok_or_else(|| self.err("unclosed `{`"))?;
            let e = ScalarExpr::parse(&self.src[start..end]).map_err(|e| match e {
                MathError::Parse { pos, msg } => AlgebraError::WordParse { pos: start + pos, msg },
                other => other.into(),
            })?;
            self.pos = end + 1;
            Some(e)
        } else {
            None
        };
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c == '(' || c.is_ascii_alphabetic() || c == '_' => {
                    let r = self.factor()?;
                    acc = WordTree::product(acc, r);
                }
                _ => break,
            }
        }
        Ok(match scalar {
            Some(c) => WordTree::scaled(c, acc),
            None => acc,
        })
    }

    fn factor(&mut self) -> Result<WordTree, AlgebraError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.sum()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Ok(WordTree::Leaf(self.src[start..self.pos].to_string()))
            }
            _ => Err(self.err("expected a name or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_is_left_associative() {
        let t = WordTree::parse("x y z").unwrap();
        assert_eq!(
            t,
            WordTree::product(WordTree::product(WordTree::leaf("x"), WordTree::leaf("y")), WordTree::leaf("z"))
        );
    }

    #[test]
    fn paper_style_nesting() {
        let t = WordTree::parse("f21(((f1(a f11))f22)f21)").unwrap();
        let inner = WordTree::product(
            WordTree::product(
                WordTree::product(
                    WordTree::leaf("f1"),
                    WordTree::product(WordTree::leaf("a"), WordTree::leaf("f11")),
                ),
                WordTree::leaf("f22"),
            ),
            WordTree::leaf("f21"),
        );
        assert_eq!(t, WordTree::product(WordTree::leaf("f21"), inner));
        assert_eq!(t.to_string(), "f21(((f1(a f11))f22)f21)");
    }

    #[test]
    fn scalars_and_sums() {
        let t = WordTree::parse("{-1/nu1^3}(f21 x)({nu1}f11 - {nu1}f22 + {nu3 - mu1}f21)").unwrap();
        let WordTree::Scaled(c, body) = &t else { panic!("{t:?}") };
        assert_eq!(c.to_string(), "-1/nu1^3");
        let WordTree::Product(_, r) = &**body else { panic!() };
        let WordTree::Sum(ts) = &**r else { panic!() };
        assert_eq!(ts.len(), 3);
        assert_eq!(WordTree::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn minus_round_trips() {
        let t = WordTree::parse("-a b + c - (d + e)").unwrap();
        assert_eq!(WordTree::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!(WordTree::parse("(a b"), Err(AlgebraError::WordParse { pos: 4, .. })));
        assert!(matches!(WordTree::parse("a {x +}b"), Err(AlgebraError::WordParse { .. })));
    }

    #[test]
    fn rename_leaves_and_scalars() {
        let t = WordTree::parse("{mu1}f1 f2").unwrap();
        let lm: BTreeMap<_, _> = [("f1".to_string(), "f2".to_string()), ("f2".into(), "f1".into())].into();
        let sm: BTreeMap<_, _> = [("mu1".to_string(), "nu4".to_string())].into();
        assert_eq!(t.rename(&lm, &sm).to_string(), "{nu4}f2 f1");
    }
}
