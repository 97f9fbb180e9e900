//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use superalg::algebra::{AlgebraSpec, Element};
use superalg::catalog::{self, WMatrix};
use superalg::cli::{self, parse_algebra_file, AlgebraFile, DynAlgebra, FileRing};
use superalg::identities::{
    check_abelian_type, check_multilinear_identity, find_nonassociative_triple, randomized_abelian_type,
    randomized_check, CheckReport, IdentitySpec, RandomCheckOptions,
};
use superalg::math::{Field, Rational, RationalFunction, Ring, Specialize, Universe};
use superalg::order::{
    verify_lemma1, verify_lemma2, verify_lemma3, verify_lemma4, verify_lemma5, LemmaReport, Role, ShadowOptions,
};
use superalg::structure::{check_simple, compute_center, compute_even_center, find_unit};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn shadow() -> ShadowOptions {
    ShadowOptions {
        prime: 1_000_003,
        trials: 100,
        seed: 0,
    }
}

fn within(label: &str, limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("{label} took {t:.2?}, limit {limit:?}"))
    }
}

fn failing(r: &LemmaReport) -> Vec<String> {
    r.counted()
        .filter(|x| !x.matches)
        .map(|x| format!("{} = {}", x.label, x.value))
        .collect()
}

fn published_exponents(r: &LemmaReport) -> Vec<u32> {
    r.records
        .iter()
        .filter(|x| x.role == Role::Published)
        .map(|x| x.z_exponent)
        .collect()
}

/// Every counted display matches exactly and its extracted scalar has the
/// stated power of `z`.
fn lemma_passes(r: &LemmaReport) -> Result<(), String> {
    let bad = failing(r);
    if !bad.is_empty() {
        return Err(format!("lemma {}: {} displays fail: {}", r.lemma, bad.len(), bad.join("; ")));
    }
    for x in r.counted() {
        if x.z_degree != Some(x.z_exponent as i64) {
            return Err(format!("{}: z-degree {:?}, stated {}", x.label, x.z_degree, x.z_exponent));
        }
    }
    Ok(())
}

fn criterion1() -> Outcome {
    for n in 2..=4 {
        let start = Instant::now();
        let r = verify_lemma1(n, &shadow()).map_err(|e| e.to_string())?;
        lemma_passes(&r)?;
        let exps: BTreeSet<u32> = published_exponents(&r).into_iter().collect();
        if exps != BTreeSet::from([4, 6, 7]) {
            return Err(format!("n = {n}: exponents {exps:?}"));
        }
        within(&format!("n = {n}"), Duration::from_secs(10), start)?;
    }
    Ok("n = 2, 3, 4 exact".into())
}

fn criterion2() -> Outcome {
    let mut expected_vars: Vec<String> = ["z"].iter().map(|s| s.to_string()).collect();
    for p in ["mu", "nu", "xi"] {
        expected_vars.extend((1..=4).map(|i| format!("{p}{i}")));
    }
    expected_vars.extend(["alpha", "beta", "alpha11", "alpha12", "alpha21", "alpha22"].map(String::from));
    let mut conventions = Vec::new();
    for case in [1, 2] {
        let start = Instant::now();
        let r = verify_lemma2(case, &shadow()).map_err(|e| e.to_string())?;
        lemma_passes(&r)?;
        let exps: BTreeSet<u32> = r.counted().map(|x| x.z_exponent).collect();
        if exps != BTreeSet::from([4, 5, 8]) {
            return Err(format!("case {case}: exponents {exps:?}"));
        }
        let vars: BTreeSet<&String> = r.variables.iter().collect();
        if vars != expected_vars.iter().collect() {
            return Err(format!("case {case}: symbols {:?}", r.variables));
        }
        if r.conventions.is_empty() {
            return Err(format!("case {case}: no convention reported"));
        }
        conventions.push(format!("case {case}: {}", r.conventions.join(", ")));
        within(&format!("case {case}"), Duration::from_secs(60), start)?;
    }
    Ok(format!("{} symbols; {}", expected_vars.len(), conventions.join("; ")))
}

fn criterion3() -> Outcome {
    let mut problems = Vec::new();
    for n in 2..=6 {
        let start = Instant::now();
        let r = verify_lemma3(n, &shadow()).map_err(|e| e.to_string())?;
        if let Err(e) = lemma_passes(&r) {
            problems.push(format!("n = {n}: {e}"));
        }
        within(&format!("n = {n}"), Duration::from_secs(30), start)?;
    }
    if problems.is_empty() {
        Ok("n = 2..6 exact".into())
    } else {
        Err(problems.join(" | "))
    }
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let r = verify_lemma4(&shadow()).map_err(|e| e.to_string())?;
    within("lemma 4", Duration::from_secs(5), start)?;
    let exps = published_exponents(&r);
    if exps != [3, 3, 4, 4] {
        return Err(format!("exponents {exps:?}"));
    }
    lemma_passes(&r)?;
    Ok("four displays exact".into())
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let r = verify_lemma5(&shadow()).map_err(|e| e.to_string())?;
    within("lemma 5", Duration::from_secs(30), start)?;
    let exps = published_exponents(&r);
    if exps != [6, 6, 6, 6, 5, 5, 5, 5] {
        return Err(format!("exponents {exps:?}"));
    }
    let signs: Vec<bool> = r
        .records
        .iter()
        .filter(|x| x.role == Role::Published && x.z_exponent == 5)
        .map(|x| x.expected.starts_with("(-"))
        .collect();
    if signs != [false, true, true, false] {
        return Err(format!("beta sign pattern {signs:?}"));
    }
    lemma_passes(&r)?;
    Ok("eight displays exact".into())
}

fn rf_universe(names: &[&str]) -> Universe {
    Universe::new(names.iter().copied()).unwrap()
}

fn b22_symbolic() -> Arc<AlgebraSpec<RationalFunction>> {
    let u = rf_universe(&["nu"]);
    Arc::new(catalog::b_22(&RationalFunction::var(&u, "nu").unwrap(), &u).unwrap())
}

fn b44_symbolic() -> Arc<AlgebraSpec<RationalFunction>> {
    let names = ["w11", "w12", "w21", "w22"];
    let u = rf_universe(&names);
    let w = WMatrix {
        entries: names.map(|v| RationalFunction::var(&u, v).unwrap()),
    };
    Arc::new(catalog::b_44(&w, &u).unwrap())
}

fn rs_v2m2_numeric() -> Arc<AlgebraSpec<Rational>> {
    let (bullet, mask) = catalog::rs_v2m2_default_params::<Rational>(&());
    Arc::new(catalog::rs_v2m2(&bullet, &mask, Default::default(), &()).unwrap())
}

fn matrix_rs(n: usize) -> Arc<AlgebraSpec<Rational>> {
    Arc::new(catalog::matrix_rs(n, &()).unwrap())
}

fn b_nn(n: usize) -> Arc<AlgebraSpec<Rational>> {
    Arc::new(catalog::b_nn(n, &()).unwrap())
}

fn expect_holds(r: CheckReport) -> Result<(), String> {
    if r.holds() {
        Ok(())
    } else {
        Err(format!("{} fails on {}: {:?}", r.identity, r.algebra, r.witness))
    }
}

fn timed(label: &str, f: impl FnOnce() -> Result<(), String>) -> Result<(), String> {
    let start = Instant::now();
    f()?;
    within(label, Duration::from_secs(10), start)
}

fn criterion6() -> Outcome {
    let rs = IdentitySpec::right_symmetric();
    let ra = IdentitySpec::right_alternative_super();
    let e = |x: superalg::algebra::AlgebraError| x.to_string();
    timed("right-symmetric suite", || {
        for n in 2..=4 {
            expect_holds(check_multilinear_identity(&matrix_rs(n), &rs).map_err(e)?)?;
        }
        Ok(())
    })?;
    timed("right-alternative suite", || {
        for n in 2..=4 {
            expect_holds(check_multilinear_identity(&b_nn(n), &ra).map_err(e)?)?;
        }
        expect_holds(check_multilinear_identity(&b22_symbolic(), &ra).map_err(e)?)?;
        expect_holds(check_multilinear_identity(&b44_symbolic(), &ra).map_err(e)?)
    })?;
    timed("abelian-type suite", || {
        for n in 2..=4 {
            expect_holds(check_abelian_type(&b_nn(n)).map_err(e)?)?;
        }
        expect_holds(check_abelian_type(&b22_symbolic()).map_err(e)?)
    })?;
    Ok("right-symmetric, super right-alternative and abelian-type suites hold".into())
}

fn witness<R: Ring>(alg: &Arc<AlgebraSpec<R>>) -> Result<String, String> {
    match find_nonassociative_triple(alg).map_err(|e| e.to_string())? {
        Some(w) => Ok(format!("{}: ({})", alg.name(), w.labels.join(", "))),
        None => Err(format!("{}: no nonzero associator", alg.name())),
    }
}

fn criterion7() -> Outcome {
    let found = [
        witness(&matrix_rs(2))?,
        witness(&rs_v2m2_numeric())?,
        witness(&b_nn(2))?,
        witness(&b22_symbolic())?,
        witness(&b44_symbolic())?,
    ];
    Ok(found.join("; "))
}

/// Unit, center, even center and simplicity, with the unit and the center
/// re-checked against their defining conditions on basis vectors.
fn structure_suite<F: Field>(alg: &Arc<AlgebraSpec<F>>) -> Result<(), String> {
    let e = |x: superalg::algebra::AlgebraError| x.to_string();
    let name = alg.name();
    let unit = find_unit(alg).map_err(e)?.ok_or(format!("{name}: no unit"))?;
    let basis: Vec<Element<F>> = (0..alg.dim()).map(|i| Element::basis(alg, i)).collect();
    for b in &basis {
        if unit.multiply(b).map_err(e)? != *b || b.multiply(&unit).map_err(e)? != *b {
            return Err(format!("{name}: {unit} is not a unit on {b}"));
        }
    }
    let center = compute_center(alg).map_err(e)?;
    if center.dim() != 1 || !center.contains(&unit) {
        return Err(format!("{name}: center has dim {}", center.dim()));
    }
    let c = &center.basis()[0];
    for x in &basis {
        if !Element::commutator(c, x).map_err(e)?.is_zero() {
            return Err(format!("{name}: center element does not commute with {x}"));
        }
        for y in &basis {
            for a in [
                Element::associator(c, x, y),
                Element::associator(x, c, y),
                Element::associator(x, y, c),
            ] {
                if !a.map_err(e)?.is_zero() {
                    return Err(format!("{name}: center element not in the nucleus at ({x}, {y})"));
                }
            }
        }
    }
    if alg.is_graded() {
        let even = compute_even_center(alg).map_err(e)?;
        if even.dim() != 1 || !even.contains(&unit) {
            return Err(format!("{name}: even center has dim {}", even.dim()));
        }
    }
    let v = check_simple(alg, alg.is_graded(), 0).map_err(e)?;
    if !v.is_simple() {
        let w = v.witness.as_ref().expect("witness for non-simple");
        return Err(format!("{name}: ideal of {} has dim {}", w.generator, w.closure.dim()));
    }
    Ok(())
}

fn criterion8() -> Outcome {
    let mut checked = Vec::new();
    for n in 2..=4 {
        structure_suite(&matrix_rs(n))?;
        structure_suite(&b_nn(n))?;
        checked.push(format!("matrix-rs(n={n})"));
        checked.push(format!("b-nn(n={n})"));
    }
    structure_suite(&rs_v2m2_numeric())?;
    structure_suite(&b22_symbolic())?;
    structure_suite(&b44_symbolic())?;
    checked.extend(["rs-v2m2", "b-22", "b-44"].map(String::from));
    Ok(format!("unital, one-dimensional centers, simple: {}", checked.join(", ")))
}

fn random_ok<R: Specialize>(alg: &AlgebraSpec<R>, id: Option<&IdentitySpec>) -> Result<(), String> {
    let opts = RandomCheckOptions::default();
    let r = match id {
        Some(id) => randomized_check(alg, id, &opts),
        None => randomized_abelian_type(alg, &opts),
    }
    .map_err(|e| e.to_string())?;
    if r.failures == 0 && r.tuples_checked >= 100 {
        Ok(())
    } else {
        Err(format!("{} on {}: {} shadow failures", r.identity, r.algebra, r.failures))
    }
}

fn criterion9() -> Outcome {
    let mut reports = Vec::new();
    let e = |x: superalg::order::OrderError| x.to_string();
    for n in 2..=4 {
        reports.push(verify_lemma1(n, &shadow()).map_err(e)?);
    }
    for case in [1, 2] {
        reports.push(verify_lemma2(case, &shadow()).map_err(e)?);
    }
    for n in 2..=6 {
        reports.push(verify_lemma3(n, &shadow()).map_err(e)?);
    }
    reports.push(verify_lemma4(&shadow()).map_err(e)?);
    reports.push(verify_lemma5(&shadow()).map_err(e)?);
    let mut verified = 0;
    for r in &reports {
        if r.shadow.trials != 100 || r.shadow.prime != 1_000_003 {
            return Err(format!("lemma {}: shadow options {:?}", r.lemma, r.shadow));
        }
        for x in &r.records {
            if x.matches && x.shadow_failures > 0 {
                return Err(format!("lemma {} {}: {} shadow failures", r.lemma, x.label, x.shadow_failures));
            }
            if !x.matches && x.shadow_failures == 0 {
                return Err(format!("lemma {} {}: exact mismatch missed by the shadow", r.lemma, x.label));
            }
            verified += usize::from(x.matches);
        }
    }
    let rs = IdentitySpec::right_symmetric();
    let ra = IdentitySpec::right_alternative_super();
    for n in 2..=4 {
        random_ok(&matrix_rs(n), Some(&rs))?;
        random_ok(&b_nn(n), Some(&ra))?;
        random_ok(&b_nn(n), None)?;
    }
    random_ok(&rs_v2m2_numeric(), Some(&rs))?;
    random_ok(&b22_symbolic(), Some(&ra))?;
    random_ok(&b22_symbolic(), None)?;
    random_ok(&b44_symbolic(), Some(&ra))?;
    Ok(format!("{verified} verified displays and 14 identity checks with zero shadow failures"))
}

fn round_trip<R: FileRing>(spec: &AlgebraSpec<R>, back: impl Fn(DynAlgebra) -> Option<Arc<AlgebraSpec<R>>>) -> Result<(), String> {
    let json = cli::algebra_file_to_json(&AlgebraFile::from_spec(spec));
    let parsed = parse_algebra_file(json.as_bytes()).map_err(|e| e.to_string())?;
    let again = cli::algebra_file_json(&parsed);
    let parsed = back(parsed).ok_or(format!("{}: ring changed", spec.name()))?;
    if *parsed != *spec {
        return Err(format!("{}: spec changed in round trip", spec.name()));
    }
    if again != json {
        return Err(format!("{}: file bytes changed in round trip", spec.name()));
    }
    Ok(())
}

fn criterion10() -> Outcome {
    let commands: [&[&str]; 5] = [
        &["verify-lemma", "1", "--json"],
        &["verify-lemma", "5", "--json"],
        &["random-check", "--algebra", "b-44", "--identity", "right-alternative-super", "--json"],
        &["simple", "--algebra", "b-22", "--graded", "--json"],
        &["check", "--algebra", "matrix-rs", "--n", "3", "--identity", "associative", "--json"],
    ];
    for args in commands {
        let argv = || std::iter::once("superalg").chain(args.iter().copied());
        let a = cli::run(argv());
        let b = cli::run(argv());
        if a.stdout.is_empty() || a.stdout != b.stdout {
            return Err(format!("`{}` is not reproducible", args.join(" ")));
        }
    }
    let rational = |d: DynAlgebra| match d {
        DynAlgebra::Rational(a) => Some(a),
        _ => None,
    };
    let symbolic = |d: DynAlgebra| match d {
        DynAlgebra::Symbolic(a) => Some(a),
        _ => None,
    };
    for n in 2..=4 {
        round_trip(&matrix_rs(n), rational)?;
        round_trip(&b_nn(n), rational)?;
    }
    round_trip(&rs_v2m2_numeric(), rational)?;
    round_trip(&b22_symbolic(), symbolic)?;
    round_trip(&b44_symbolic(), symbolic)?;
    Ok("reports byte-identical; all catalog algebras round-trip exactly".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("lemma 1 displays", criterion1),
        ("lemma 2 displays", criterion2),
        ("lemma 3 displays", criterion3),
        ("lemma 4 displays", criterion4),
        ("lemma 5 displays", criterion5),
        ("identity suite", criterion6),
        ("non-associativity witnesses", criterion7),
        ("structure suite", criterion8),
        ("modular shadow", criterion9),
        ("determinism and round trip", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({t:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({t:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
