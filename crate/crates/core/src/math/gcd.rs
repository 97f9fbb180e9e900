//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive content / primitive-part scheme: pick a main variable, split off
//! the content (gcd of the coefficients, computed recursively in fewer
//! variables), and run a primitive pseudo-remainder sequence on the
//! primitive parts. Results are monic in the graded-lex order.

use super::{Monomial, Polynomial, Rational, Ring};

pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let universe = a.universe().clone();
    let one = Polynomial::constant(&universe, Rational::from(1));
    if a.is_constant() || b.is_constant() {
        return one;
    }

    // Split off the largest monomial factor of each side first; powers of a
    // single scaling variable are the common case.
    let (ma, ra) = monomial_content(a);
    let (mb, rb) = monomial_content(b);
    let mono = Polynomial::monomial(&universe, ma.gcd(&mb), Rational::from(1));
    let rest = gcd_primitive_monomials(&ra, &rb);
    mono.mul(&rest).monic()
}

/// `p = m * rest` with `m` the gcd of the monomials of `p`.
fn monomial_content(p: &Polynomial) -> (Monomial, Polynomial) {
    let mut it = p.terms().iter();
    let first = it.next().expect("nonzero polynomial").0.clone();
    let m = it.fold(first, |acc, (t, _)| acc.gcd(t));
    if m.is_one() {
        return (m, p.clone());
    }
    let divisor = Polynomial::monomial(p.universe(), m.clone(), Rational::from(1));
    let rest = p.try_div(&divisor).expect("monomial content divides");
    (m, rest)
}

/// gcd of two polynomials with no monomial factor.
fn gcd_primitive_monomials(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let universe = a.universe().clone();
    let one = Polynomial::constant(&universe, Rational::from(1));
    if a.is_constant() || b.is_constant() {
        return one;
    }
    if a.is_monomial() || b.is_monomial() {
        // A monomial without monomial content is a constant.
        return one;
    }
    let am = a.monic();
    let bm = b.monic();
    if am == bm {
        return am;
    }
    if a.total_degree() >= b.total_degree() {
        if a.try_div(b).is_some() {
            return bm;
        }
    } else if b.try_div(a).is_some() {
        return am;
    }

    let sa = a.support();
    let sb = b.support();
    // A variable present on one side only: gcd(a, b) = gcd(content_v(a), b).
    if let Some(&v) = sa.iter().find(|v| !sb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = sb.iter().find(|v| !sa.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    let v = *sa
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).min(b.degree_in(v)), v))
        .expect("non-constant polynomial has support");

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.try_div(&ca).expect("content divides");
    let pb = b.try_div(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    c.mul(&g).monic()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.universe());
    for c in p.coeffs_in(var).into_iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Polynomial::constant(p.universe(), Rational::from(1));
        }
    }
    acc
}

pub fn primitive_part_in(p: &Polynomial, var: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    p.try_div(&content_in(p, var)).expect("content divides")
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `var`. Only defined
/// up to a factor from the coefficient ring, which is all the gcd needs.
pub fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let (db, lcb) = b.lead_in(var);
    let universe = a.universe().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let (dr, lcr) = r.lead_in(var);
        let shift = Polynomial::var_power(&universe, var, dr - db);
        r = lcb.mul(&r).sub(&lcr.mul(&shift).mul(b));
    }
    r
}

fn primitive_prs(a: Polynomial, b: Polynomial, var: usize) -> Polynomial {
    let one = Polynomial::constant(a.universe(), Rational::from(1));
    let (mut r0, mut r1) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if r1.degree_in(var) == 0 {
            return one;
        }
        let r = pseudo_remainder(&r0, &r1, var);
        if r.is_zero() {
            return primitive_part_in(&r1, var).monic();
        }
        if r.degree_in(var) == 0 {
            return one;
        }
        r0 = r1;
        r1 = primitive_part_in(&r, var);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{ScalarExpr, Universe};

    fn u() -> Universe {
        Universe::new(["x", "y", "z", "w"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        ScalarExpr::parse(s).unwrap().to_polynomial(&u()).unwrap()
    }

    #[test]
    fn shared_linear_factor() {
        let g = gcd(&p("(x+y)*(x-z)"), &p("(x+y)*(y+2*w)"));
        assert_eq!(g, p("x+y"));
    }

    #[test]
    fn coprime() {
        assert_eq!(gcd(&p("x^2+y^2"), &p("x+y")), p("1"));
        assert_eq!(gcd(&p("3"), &p("x")), p("1"));
    }

    #[test]
    fn monomial_parts() {
        assert_eq!(gcd(&p("6*x^2*y*z^3"), &p("4*x*z^5 + 2*x^3*z^2")), p("x*z^2"));
    }

    #[test]
    fn higher_degree_common_factor() {
        let f = p("x^2*y - z*w + 1");
        let a = f.mul(&p("x*y + z^2"));
        let b = f.mul(&p("x - w^3")).mul(&p("y + 1"));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn with_zero() {
        assert_eq!(gcd(&p("0"), &p("2*x + 4")), p("x + 2"));
    }
}
