//! Constructors for the five example algebras.
//!
//! All constructors are generic over the coefficient ring, so structure
//! parameters may be numbers or indeterminates.

use crate::algebra::{AlgebraError, AlgebraSpec};
use crate::math::{Field, Ring};

/// Bilinear operation on `V_2`: `e_i • e_j = (gamma_t, delta_t)` with
/// `t = 2(i-1) + j` in row-major order of `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BulletTable<R> {
    pub gamma: [R; 4],
    pub delta: [R; 4],
}

/// Entries of `C`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMask<R> {
    pub epsilon: [R; 4],
}

/// Entries `(alpha, beta, gamma, delta)` of `w`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WMatrix<R> {
    pub entries: [R; 4],
}

/// How the matrix of right •-multiplication by `v` is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorConvention {
    /// Row `i` is `e_i • v`; the matrix acts on row vectors from the right.
    #[default]
    Rows,
    /// Column `i` is `e_i • v`.
    Columns,
}

type M2<R> = [[R; 2]; 2];

fn m2_from<R: Ring>(f: impl Fn(usize, usize) -> R) -> M2<R> {
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

fn m2_unit<R: Ring>(ctx: &R::Ctx, a: usize, b: usize) -> M2<R> {
    m2_from(|i, j| if (i, j) == (a, b) { R::one(ctx) } else { R::zero(ctx) })
}

fn m2_mul<R: Ring>(x: &M2<R>, y: &M2<R>) -> M2<R> {
    m2_from(|i, j| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j])))
}

fn m2_sub<R: Ring>(x: &M2<R>, y: &M2<R>) -> M2<R> {
    m2_from(|i, j| x[i][j].sub(&y[i][j]))
}

fn m2_scale<R: Ring>(c: &R, x: &M2<R>) -> M2<R> {
    m2_from(|i, j| c.mul(&x[i][j]))
}

fn m2_trace<R: Ring>(x: &M2<R>) -> R {
    x[0][0].add(&x[1][1])
}

fn m2_flat<R: Ring>(x: &M2<R>) -> [R; 4] {
    [x[0][0].clone(), x[0][1].clone(), x[1][0].clone(), x[1][1].clone()]
}

/// Row vector times matrix.
fn row_mul<R: Ring>(v: &[R; 2], m: &M2<R>) -> [R; 2] {
    [
        v[0].mul(&m[0][0]).add(&v[1].mul(&m[1][0])),
        v[0].mul(&m[0][1]).add(&v[1].mul(&m[1][1])),
    ]
}

fn basis2<R: Ring>(ctx: &R::Ctx, i: usize) -> [R; 2] {
    if i == 0 {
        [R::one(ctx), R::zero(ctx)]
    } else {
        [R::zero(ctx), R::one(ctx)]
    }
}

fn check_size(n: usize, what: &str) -> Result<(), AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::Parameter(format!("{what} needs n >= 2, got {n}")));
    }
    Ok(())
}

fn pair_label(prefix: &str, n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i}_{j}")
    }
}

/// `F^n + M_n(F)` with `v·A = vA` and `A·v = vA + [A, v̄]`, `v̄(e_i) = e_ii`.
///
/// Basis order: `e_1..e_n`, then `e_ij` row-major.
pub fn matrix_rs<R: Ring>(n: usize, ctx: &R::Ctx) -> Result<AlgebraSpec<R>, AlgebraError> {
    check_size(n, "matrix-rs")?;
    let dim = n + n * n;
    let mut labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    for i in 1..=n {
        for j in 1..=n {
            labels.push(pair_label("e", n, i, j));
        }
    }
    let m = |a: usize, b: usize| n + a * n + b;
    let one = R::one(ctx);
    let mut products = Vec::new();
    let mut push = |i, j, k, c: &R| {
        products.push(crate::algebra::Product {
            i,
            j,
            k,
            coeff: c.clone(),
        })
    };
    let neg_one = one.neg();
    for a in 0..n {
        push(a, a, a, &one);
        for c in 0..n {
            // e_a · e_ac = e_c
            push(a, m(a, c), c, &one);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if c == a {
                    // e_c E_ab = e_b
                    push(m(a, b), c, b, &one);
                    // -E_cc E_ab = -E_cb
                    push(m(a, b), c, m(c, b), &neg_one);
                }
                if b == c {
                    // E_ab E_cc = E_ac
                    push(m(a, b), c, m(a, c), &one);
                }
                for d in 0..n {
                    if b == c {
                        push(m(a, b), m(c, d), m(a, d), &one);
                    }
                }
            }
        }
    }
    debug_assert_eq!(labels.len(), dim);
    AlgebraSpec::new(format!("matrix-rs(n={n})"), labels, vec![0; dim], ctx.clone(), products)
}

/// `V_2 + M_2(F)` with `A·v = vA + [A, [R•_v]]` and
/// `w·u = w•u + ψ_C(u)π(w)`, where `π(x, y)` has both rows `(x, y)` and
/// `ψ_C(x) = π(x) ⊙ C`.
///
/// Basis order: `e1, e2, e11, e12, e21, e22`.
pub fn rs_v2m2<R: Ring>(
    bullet: &BulletTable<R>,
    mask: &HadamardMask<R>,
    convention: OperatorConvention,
    ctx: &R::Ctx,
) -> Result<AlgebraSpec<R>, AlgebraError> {
    let labels: Vec<String> = ["e1", "e2", "e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
    let zero = R::zero(ctx);
    let bul = |x: &[R; 2], y: &[R; 2]| -> [R; 2] {
        let mut r = [zero.clone(), zero.clone()];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let c = xi.mul(yj);
                if c.is_zero() {
                    continue;
                }
                let t = 2 * i + j;
                r[0] = r[0].add(&c.mul(&bullet.gamma[t]));
                r[1] = r[1].add(&c.mul(&bullet.delta[t]));
            }
        }
        r
    };
    let pi = |x: &[R; 2]| -> M2<R> { [[x[0].clone(), x[1].clone()], [x[0].clone(), x[1].clone()]] };
    let eps = &mask.epsilon;
    let psi = |x: &[R; 2]| -> M2<R> {
        let p = pi(x);
        m2_from(|i, j| p[i][j].mul(&eps[2 * i + j]))
    };
    let r_op = |v: &[R; 2]| -> M2<R> {
        let rows = [bul(&basis2(ctx, 0), v), bul(&basis2(ctx, 1), v)];
        match convention {
            OperatorConvention::Rows => m2_from(|i, j| rows[i][j].clone()),
            OperatorConvention::Columns => m2_from(|i, j| rows[j][i].clone()),
        }
    };
    enum Part<R> {
        V([R; 2]),
        M(M2<R>),
    }
    let split = |k: usize| -> Part<R> {
        if k < 2 {
            Part::V(basis2(ctx, k))
        } else {
            Part::M(m2_unit(ctx, (k - 2) / 2, (k - 2) % 2))
        }
    };
    let assemble = |v: Option<[R; 2]>, m: Option<M2<R>>| -> Vec<R> {
        let mut out = vec![zero.clone(); 6];
        if let Some(v) = v {
            out[0] = v[0].clone();
            out[1] = v[1].clone();
        }
        if let Some(m) = m {
            let f = m2_flat(&m);
            out[2..].clone_from_slice(&f);
        }
        out
    };
    let name = match convention {
        OperatorConvention::Rows => "rs-v2m2",
        OperatorConvention::Columns => "rs-v2m2(columns)",
    };
    AlgebraSpec::from_fn(name, labels, vec![0; 6], ctx.clone(), |i, j| match (split(i), split(j)) {
        (Part::M(a), Part::M(b)) => assemble(None, Some(m2_mul(&a, &b))),
        (Part::V(v), Part::M(a)) => assemble(Some(row_mul(&v, &a)), None),
        (Part::M(a), Part::V(v)) => {
            let r = r_op(&v);
            let comm = m2_sub(&m2_mul(&a, &r), &m2_mul(&r, &a));
            assemble(Some(row_mul(&v, &a)), Some(comm))
        }
        (Part::V(w), Part::V(u)) => assemble(Some(bul(&w, &u)), Some(m2_mul(&psi(&u), &pi(&w)))),
    })
}

/// A right-symmetric instance of [`rs_v2m2`] with rational entries:
/// `e1•e1 = e2`, `e2•e2 = e1`, mixed products zero, `C = [[0,1],[1,0]]`.
pub fn rs_v2m2_default_params<R: Ring>(ctx: &R::Ctx) -> (BulletTable<R>, HadamardMask<R>) {
    let i = |n: i64| R::from_int(ctx, n);
    (
        BulletTable {
            gamma: [i(0), i(0), i(0), i(1)],
            delta: [i(1), i(0), i(0), i(0)],
        },
        HadamardMask {
            epsilon: [i(0), i(1), i(1), i(0)],
        },
    )
}

/// `B_{n|n} = F^n + [F^n]` with `[x]·y = [x τ(y)]`, `τ` the cyclic shift
/// `(a_1, ..., a_n) -> (a_2, ..., a_n, a_1)`.
///
/// Basis order: `e1..en` (even), then `[e1]..[en]` (odd).
pub fn b_nn<R: Ring>(n: usize, ctx: &R::Ctx) -> Result<AlgebraSpec<R>, AlgebraError> {
    check_size(n, "b-nn")?;
    let mut labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    labels.extend((1..=n).map(|i| format!("[e{i}]")));
    let mut parity = vec![0u8; n];
    parity.extend(vec![1u8; n]);
    let one = R::one(ctx);
    let mut products = Vec::new();
    for i in 0..n {
        let p = |a, b, k| crate::algebra::Product {
            i: a,
            j: b,
            k,
            coeff: one.clone(),
        };
        products.push(p(i, i, i));
        products.push(p(n + i, n + i, i));
        products.push(p(i, n + i, n + i));
        // τ(e_j) = e_{j-1}, so [e_i] e_{i+1} = [e_i]
        products.push(p(n + i, (i + 1) % n, n + i));
    }
    AlgebraSpec::new(format!("b-nn(n={n})"), labels, parity, ctx.clone(), products)
}

/// `B_{2|2}(ν)` with `[x][y] = x χ(y)`, `χ(a_1, a_2) = (a_1 + a_2, a_1 + ν a_2)`,
/// `x[y] = [xy]`, `[x]y = [x y*]`, `(a_1, a_2)* = (a_2, a_1)`.
///
/// Basis order: `e1, e2, [e1], [e2]`.
pub fn b_22<R: Ring>(nu: &R, ctx: &R::Ctx) -> Result<AlgebraSpec<R>, AlgebraError> {
    let labels: Vec<String> = ["e1", "e2", "[e1]", "[e2]"].iter().map(|s| s.to_string()).collect();
    let zero = R::zero(ctx);
    let one = R::one(ctx);
    let chi = |y: &[R; 2]| -> [R; 2] { [y[0].add(&y[1]), y[0].add(&nu.mul(&y[1]))] };
    let star = |y: &[R; 2]| -> [R; 2] { [y[1].clone(), y[0].clone()] };
    let had = |x: &[R; 2], y: &[R; 2]| -> [R; 2] { [x[0].mul(&y[0]), x[1].mul(&y[1])] };
    let e = |k: usize| -> [R; 2] {
        let mut v = [zero.clone(), zero.clone()];
        v[k % 2] = one.clone();
        v
    };
    AlgebraSpec::from_fn("b-22", labels, vec![0, 0, 1, 1], ctx.clone(), |i, j| {
        let (x, y) = (e(i), e(j));
        let (v, odd) = match (i >= 2, j >= 2) {
            (false, false) => (had(&x, &y), false),
            (true, true) => (had(&x, &chi(&y)), false),
            (false, true) => (had(&x, &y), true),
            (true, false) => (had(&x, &star(&y)), true),
        };
        let mut out = vec![zero.clone(); 4];
        let off = if odd { 2 } else { 0 };
        out[off] = v[0].clone();
        out[off + 1] = v[1].clone();
        out
    })
}

/// `B_{4|4}(w) = M_2(F) + [M_2(F)]` with `[x][y] = tr(y)/tr(w) x`,
/// `[x]y = [x ȳ]` (symplectic involution) and `x[y] = [xy - ([x][y])^D]`,
/// `a^D = aw - wa`.
///
/// Basis order: `e11, e12, e21, e22`, then the bracketed copies.
pub fn b_44<F: Field>(w: &WMatrix<F>, ctx: &F::Ctx) -> Result<AlgebraSpec<F>, AlgebraError> {
    let labels: Vec<String> = ["e11", "e12", "e21", "e22", "[e11]", "[e12]", "[e21]", "[e22]"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let wm: M2<F> = m2_from(|i, j| w.entries[2 * i + j].clone());
    let tr_w = m2_trace(&wm);
    let inv_tr = tr_w
        .inv()
        .map_err(|_| AlgebraError::Parameter("b-44 needs tr(w) invertible".into()))?;
    let zero = F::zero(ctx);
    let bar = |a: &M2<F>| -> M2<F> { [[a[1][1].clone(), a[0][1].neg()], [a[1][0].neg(), a[0][0].clone()]] };
    let d = |a: &M2<F>| -> M2<F> { m2_sub(&m2_mul(a, &wm), &m2_mul(&wm, a)) };
    let unit = |k: usize| m2_unit::<F>(ctx, (k % 4) / 2, k % 2);
    AlgebraSpec::from_fn("b-44", labels, vec![0, 0, 0, 0, 1, 1, 1, 1], ctx.clone(), |i, j| {
        let (x, y) = (unit(i), unit(j));
        let (m, odd) = match (i >= 4, j >= 4) {
            (false, false) => (m2_mul(&x, &y), false),
            (true, true) => (m2_scale(&m2_trace(&y).mul(&inv_tr), &x), false),
            (true, false) => (m2_mul(&x, &bar(&y)), true),
            (false, true) => {
                let oo = m2_scale(&m2_trace(&y).mul(&inv_tr), &x);
                (m2_sub(&m2_mul(&x, &y), &d(&oo)), true)
            }
        };
        let mut out = vec![zero.clone(); 8];
        let off = if odd { 4 } else { 0 };
        out[off..off + 4].clone_from_slice(&m2_flat(&m));
        out
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Element;
    use crate::math::{Rational, RationalFunction, Universe};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn el(a: &Arc<AlgebraSpec<Rational>>, terms: &[(&str, i64)]) -> Element<Rational> {
        let mut x = Element::zero(a);
        for (l, c) in terms {
            let i = a.index_of(l).unwrap_or_else(|| panic!("{l}"));
            x = x.add(&Element::basis_scaled(a, i, q(*c))).unwrap();
        }
        x
    }

    fn mul(a: &Arc<AlgebraSpec<Rational>>, x: &str, y: &str) -> Element<Rational> {
        el(a, &[(x, 1)]).multiply(&el(a, &[(y, 1)])).unwrap()
    }

    #[test]
    fn matrix_rs_products() {
        let a = Arc::new(matrix_rs::<Rational>(2, &()).unwrap());
        assert_eq!(a.dim(), 6);
        assert_eq!(mul(&a, "e12", "e1"), el(&a, &[("e2", 1), ("e12", -1)]));
        assert_eq!(mul(&a, "e1", "e11"), el(&a, &[("e1", 1)]));
        assert_eq!(mul(&a, "e11", "e1"), el(&a, &[("e1", 1)]));
        assert!(matrix_rs::<Rational>(1, &()).is_err());
    }

    #[test]
    fn matrix_rs_identity_is_unit() {
        for n in 2..=3 {
            let a = Arc::new(matrix_rs::<Rational>(n, &()).unwrap());
            let names: Vec<String> = (1..=n).map(|i| format!("e{i}{i}")).collect();
            let terms: Vec<(&str, i64)> = names.iter().map(|s| (s.as_str(), 1)).collect();
            let u = el(&a, &terms);
            for i in 0..a.dim() {
                let e = Element::basis(&a, i);
                assert_eq!(u.multiply(&e).unwrap(), e);
                assert_eq!(e.multiply(&u).unwrap(), e);
            }
        }
    }

    #[test]
    fn rs_v2m2_products() {
        let u = Universe::new(["g1", "g2", "g3", "g4", "d1", "d2", "d3", "d4", "c1", "c2", "c3", "c4"]).unwrap();
        let v = |s: &str| RationalFunction::var(&u, s).unwrap();
        let bt = BulletTable {
            gamma: [v("g1"), v("g2"), v("g3"), v("g4")],
            delta: [v("d1"), v("d2"), v("d3"), v("d4")],
        };
        let hm = HadamardMask {
            epsilon: [v("c1"), v("c2"), v("c3"), v("c4")],
        };
        let a = Arc::new(rs_v2m2(&bt, &hm, OperatorConvention::Rows, &u).unwrap());
        let p = Element::basis(&a, 0).multiply(&Element::basis(&a, 1)).unwrap();
        // (g2, d2) plus the matrix with first column (c2, c4)
        let expect = [v("g2"), v("d2"), v("c2"), RationalFunction::zero(&u), v("c4"), RationalFunction::zero(&u)];
        assert_eq!(p.coords(), &expect);
        // I·v = v
        let id = Element::basis(&a, 2).add(&Element::basis(&a, 5)).unwrap();
        for k in 0..2 {
            assert_eq!(id.multiply(&Element::basis(&a, k)).unwrap(), Element::basis(&a, k));
        }
    }

    #[test]
    fn rs_v2m2_zero_parameters() {
        let z = || [q(0), q(0), q(0), q(0)];
        let a = Arc::new(
            rs_v2m2(
                &BulletTable { gamma: z(), delta: z() },
                &HadamardMask { epsilon: z() },
                OperatorConvention::Rows,
                &(),
            )
            .unwrap(),
        );
        assert!(mul(&a, "e1", "e2").is_zero());
    }

    #[test]
    fn b_nn_products() {
        let a = Arc::new(b_nn::<Rational>(2, &()).unwrap());
        assert_eq!(mul(&a, "[e1]", "[e1]"), el(&a, &[("e1", 1)]));
        assert_eq!(mul(&a, "[e1]", "e2"), el(&a, &[("[e1]", 1)]));
        assert!(mul(&a, "[e1]", "e1").is_zero());
        let a3 = Arc::new(b_nn::<Rational>(3, &()).unwrap());
        let u = el(&a3, &[("e1", 1), ("e2", 1), ("e3", 1)]);
        for i in 0..6 {
            let e = Element::basis(&a3, i);
            assert_eq!(u.multiply(&e).unwrap(), e);
            assert_eq!(e.multiply(&u).unwrap(), e);
        }
    }

    #[test]
    fn b_22_products() {
        let a = Arc::new(b_22(&q(7), &()).unwrap());
        assert_eq!(mul(&a, "[e1]", "[e2]"), el(&a, &[("e1", 1)]));
        assert_eq!(mul(&a, "[e2]", "[e2]"), el(&a, &[("e2", 7)]));
        assert_eq!(mul(&a, "[e1]", "e2"), el(&a, &[("[e1]", 1)]));
        let one = el(&a, &[("e1", 1), ("e2", 1)]);
        for l in ["[e1]", "[e2]"] {
            assert_eq!(one.multiply(&el(&a, &[(l, 1)])).unwrap(), el(&a, &[(l, 1)]));
        }
    }

    #[test]
    fn b_22_symbolic_then_specialized() {
        let u = Universe::new(["nu"]).unwrap();
        let sym = b_22(&RationalFunction::var(&u, "nu").unwrap(), &u).unwrap();
        let at3 = sym
            .try_map((), |c| c.eval_with::<Rational>(&(), |_| Ok(q(3))))
            .unwrap();
        assert_eq!(at3, b_22(&q(3), &()).unwrap());
    }

    #[test]
    fn b_44_products() {
        let w = WMatrix {
            entries: [q(1), q(0), q(0), q(0)],
        };
        let a = Arc::new(b_44(&w, &()).unwrap());
        assert_eq!(mul(&a, "[e11]", "[e22]"), el(&a, &[("e11", 1)]));
        assert_eq!(mul(&a, "[e11]", "e12"), el(&a, &[("[e12]", -1)]));
        let id = el(&a, &[("e11", 1), ("e22", 1)]);
        for l in ["[e11]", "[e12]", "[e21]", "[e22]"] {
            assert_eq!(id.multiply(&el(&a, &[(l, 1)])).unwrap(), el(&a, &[(l, 1)]));
        }
        let bad = WMatrix {
            entries: [q(1), q(2), q(3), q(-1)],
        };
        assert!(matches!(b_44(&bad, &()), Err(AlgebraError::Parameter(_))));
    }
}
