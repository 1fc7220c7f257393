//! Acceptance suite. Each criterion prints one PASS or FAIL line with its
//! running time; the process exits nonzero if any line fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use embedkit::catalog::{affine, builtin_catalog, cyclic, flat, product, truncated};
use embedkit::diagram::{
    evaluate, full_diagram_check, enumerate_paths, CategoryId, DiagramOptions, ExprLanguage, TYPING_TABLE,
};
use embedkit::embeddings::theorems::{check_theorem, Theorem, Verdict};
use embedkit::lattice::{grothendieck_group_fp, smith_normal_form};
use embedkit::predicates::{check_distinct_multiples, is_cancellative, MultiplesReport};
use embedkit::{
    divisible_hull, formal_difference, modulate, nsum, regularize, scalar_mul, unique_quotient, AbelianGroupStructure,
    CanonicalMap, Decision, Element, EmbeddingKind, EqResult, Error, IntMatrix, Integer, Matrix, MonoidValue,
    Rational, RelationMode,
};
use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn eq(m: &MonoidValue, a: &Element, b: &Element) -> Result<bool, String> {
    match m.eq(a, b) {
        EqResult::Equal => Ok(true),
        EqResult::NotEqual => Ok(false),
        other => Err(format!("{}: undecided {a} vs {b}: {other:?}", m.name())),
    }
}

fn add(m: &MonoidValue, a: &Element, b: &Element) -> Result<Element, String> {
    m.add(a, b).map_err(|e| format!("{}: {e}", m.name()))
}

fn image(map: &CanonicalMap, a: &Element) -> Result<Element, String> {
    map.apply(a).map_err(|e| format!("{}: {e}", map.name()))
}

/// Exhaustive additivity of a map out of a finite monoid.
fn additive_on_all(x: &MonoidValue, map: &CanonicalMap, all: &[Element]) -> Outcome {
    let t = map.target();
    ensure!(eq(t, &image(map, &x.zero())?, &t.zero())?, "{}: zero not preserved", x.name());
    for a in all {
        for b in all {
            let lhs = image(map, &add(x, a, b)?)?;
            let rhs = add(t, &image(map, a)?, &image(map, b)?)?;
            ensure!(eq(t, &lhs, &rhs)?, "{}: not additive at {a}, {b}", x.name());
        }
    }
    Ok(())
}

fn regularization() -> Outcome {
    for x in builtin_catalog() {
        let r = check_theorem(Theorem::Regularization, &x, RelationMode::Saturated, 100, 0);
        ensure!(r.verdict == Verdict::Pass, "{}: {:?}", x.name(), r.checks);
        let Some(all) = x.enumerate() else { continue };
        let (q, map) = regularize(&x).map_err(|e| e.to_string())?;
        additive_on_all(&x, &map, &all)?;
        let target = q.enumerate().ok_or("finite source with infinite quotient")?;
        for a in &target {
            for b in &target {
                for c in &target {
                    if eq(&q, &add(&q, a, b)?, &add(&q, a, c)?)? {
                        ensure!(eq(&q, b, c)?, "{}: quotient not cancellative at {a}, {b}, {c}", x.name());
                    }
                }
            }
        }
        let images: Vec<Element> = all.iter().map(|a| image(&map, a)).collect::<Result<_, _>>()?;
        for t in &target {
            let hit = images.iter().map(|i| eq(&q, i, t)).collect::<Result<Vec<_>, _>>()?;
            ensure!(hit.contains(&true), "{}: {t} not in the image", x.name());
        }
    }
    Ok(())
}

fn formal_differences() -> Outcome {
    for x in builtin_catalog() {
        if !matches!(is_cancellative(&*x, 64), Decision::True) {
            continue;
        }
        let r = check_theorem(Theorem::FormalDifference, &x, RelationMode::Literal, 100, 0);
        ensure!(r.verdict == Verdict::Pass, "{}: {:?}", x.name(), r.checks);
        let Some(all) = x.enumerate() else { continue };
        let (g, map) = formal_difference(&x, RelationMode::Literal).map_err(|e| e.to_string())?;
        additive_on_all(&x, &map, &all)?;
        for a in &all {
            for b in &all {
                let same = eq(&g, &image(&map, a)?, &image(&map, b)?)?;
                ensure!(same == eq(&x, a, b)?, "{}: not injective at {a}, {b}", x.name());
            }
        }
    }
    for k in 1..=3 {
        let (g, _) = formal_difference(&affine(k), RelationMode::Literal).map_err(|e| e.to_string())?;
        let got = g.grothendieck().ok_or("no group structure")?;
        ensure!(got == AbelianGroupStructure::free(k), "Gr(N^{k}) = {got}");
    }
    Ok(())
}

fn cancellation_boundary() -> Outcome {
    let mut seen = 0;
    for x in builtin_catalog() {
        if !matches!(is_cancellative(&*x, 64), Decision::False(_)) {
            continue;
        }
        seen += 1;
        match formal_difference(&x, RelationMode::Literal) {
            Err(Error::NotCancellative { x: a, y, z }) => {
                ensure!(!eq(&x, &y, &z)?, "{}: witness has y = z", x.name());
                ensure!(eq(&x, &add(&x, &a, &y)?, &add(&x, &a, &z)?)?, "{}: invalid witness", x.name());
            }
            other => return Err(format!("{}: expected NotCancellative, got {other:?}", x.name())),
        }
        let (_, saturated) = formal_difference(&x, RelationMode::Saturated).map_err(|e| e.to_string())?;
        let (r, reg) = regularize(&x).map_err(|e| e.to_string())?;
        let (_, literal) = formal_difference(&r, RelationMode::Literal).map_err(|e| e.to_string())?;
        let composite = reg.then(&literal);
        let gens = x.generators();
        let exprs = ExprLanguage::for_category(CategoryId::G, gens.len()).enumerate(4);
        let values = |m: &CanonicalMap| -> Result<Vec<Element>, String> {
            exprs.iter().map(|e| evaluate(e, m, &gens).map_err(|err| format!("{e}: {err}"))).collect()
        };
        let (va, vb) = (values(&saturated)?, values(&composite)?);
        for i in 0..exprs.len() {
            for j in i + 1..exprs.len() {
                let a = eq(saturated.target(), &va[i], &va[j])?;
                let b = eq(composite.target(), &vb[i], &vb[j])?;
                ensure!(a == b, "{}: {} vs {} disagree", x.name(), exprs[i], exprs[j]);
            }
        }
    }
    ensure!(seen > 0, "no non-cancellative catalog monoid");
    Ok(())
}

/// Fraction-free (Bareiss) determinant.
fn det(m: &[Vec<Integer>]) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::one();
    }
    let mut a = m.to_vec();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<Integer>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// gcd of the k x k minors.
fn minors_gcd(a: &IntMatrix, k: usize) -> Integer {
    let mut g = Integer::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            let minor: Vec<Vec<Integer>> =
                rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            g = g.gcd(&det(&minor));
        }
    }
    g
}

fn smith_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows = (0..r).map(|_| (0..c).map(|_| Integer::from(rng.gen_range(-9i64..=9))).collect()).collect();
        let a: IntMatrix = Matrix::from_rows(rows, c);
        let f = smith_normal_form(&a);
        ensure!(&(&f.u * &a) * &f.v == f.s, "U*A*V != S for {a}");
        ensure!(det(&rows_of(&f.u)).abs().is_one(), "U not unimodular for {a}");
        ensure!(det(&rows_of(&f.v)).abs().is_one(), "V not unimodular for {a}");
        ensure!(f.s.is_diagonal(), "S not diagonal for {a}");
        let d = f.s.diagonal();
        for w in d.windows(2) {
            ensure!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])), "chain {d:?}");
        }
        let mut prod = Integer::one();
        for (k, x) in d.iter().enumerate() {
            ensure!(!x.is_negative(), "negative divisor in {d:?}");
            prod *= x;
            ensure!(prod == minors_gcd(&a, k + 1), "divisor {k} of {a}");
        }
    }
    let v = |a: u32, b: u32| vec![BigUint::from(a), BigUint::from(b)];
    let g = grothendieck_group_fp(2, &[(v(2, 0), v(0, 2))]).map_err(|e| e.to_string())?;
    ensure!(g == AbelianGroupStructure { rank: 1, torsion: vec![BigUint::from(2u32)] }, "got {g}");
    // in the basis e1 - e2, e2 the relation reads 2*(e1 - e2) = 0
    let rel: IntMatrix = Matrix::from_i64(&[&[2, -2]]);
    let basis: IntMatrix = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    ensure!(&rel * &basis == Matrix::from_i64(&[&[2, 0]]), "change of basis");
    ensure!(det(&rows_of(&basis)).is_one(), "basis not unimodular");
    Ok(())
}

fn frac(x: u64, n: u64) -> Element {
    Element::fraction(Element::vector([x]), n)
}

fn localization() -> Outcome {
    let (d, _) = divisible_hull(&affine(1), RelationMode::Saturated).map_err(|e| e.to_string())?;
    ensure!(eq(&d, &frac(3, 2), &frac(6, 4))?, "(3,2) and (6,4) differ");
    for a in 0..=12u64 {
        for b in 1..=12u64 {
            for c in 0..=12u64 {
                for e in 1..=12u64 {
                    ensure!(eq(&d, &frac(a, b), &frac(c, e))? == (a * e == c * b), "{a}/{b} vs {c}/{e}");
                }
            }
        }
    }
    Ok(())
}

fn kernel_pairs() -> Outcome {
    for x in builtin_catalog() {
        if let Some(all) = x.enumerate() {
            let bound = x.bounds().search as u64;
            let (h, map) = divisible_hull(&x, RelationMode::Saturated).map_err(|e| e.to_string())?;
            for a in &all {
                for b in &all {
                    let oracle = (1..=bound).any(|n| nsum(&*x, a, n).ok() == nsum(&*x, b, n).ok());
                    ensure!(eq(&h, &image(&map, a)?, &image(&map, b)?)? == oracle, "{} at {a}, {b}", x.name());
                }
            }
        }
        let (d, _) = divisible_hull(&x, RelationMode::Saturated).map_err(|e| e.to_string())?;
        let (u, map) = unique_quotient(&d).map_err(|e| e.to_string())?;
        let carrier = d.enumerate().unwrap_or_else(|| d.sample(4));
        for a in &carrier {
            for b in &carrier {
                let after = eq(&u, &image(&map, a)?, &image(&map, b)?)?;
                ensure!(after == eq(&d, a, b)?, "{}: U not injective at {a}, {b}", x.name());
            }
        }
        if let Some(all) = u.enumerate() {
            ensure!(all.len() == carrier.len(), "{}: U not surjective", x.name());
        }
    }
    Ok(())
}

fn q(m: i64, n: i64) -> Rational {
    Rational::new(m.into(), n.into())
}

fn cone_axioms() -> Outcome {
    let (d, _) = divisible_hull(&affine(1), RelationMode::Saturated).map_err(|e| e.to_string())?;
    let (c, map) = modulate(&d).map_err(|e| e.to_string())?;
    let scalars: Vec<Rational> = (0..=6).flat_map(|m| (1..=6).map(move |n| q(m, n))).collect();
    let mut elements = c.sample(8);
    elements.truncate(50);
    ensure!(elements.len() == 50, "only {} sampled elements", elements.len());
    let mul = |s: &Rational, e: &Element| scalar_mul(&c, s, e).map_err(|err| err.to_string());
    for (i, x) in elements.iter().enumerate() {
        ensure!(eq(&c, &mul(&q(1, 1), x)?, x)?, "1*{x} != {x}");
        let y = &elements[(7 * i + 3) % elements.len()];
        for s in &scalars {
            let lhs = mul(s, &add(&c, x, y)?)?;
            ensure!(eq(&c, &lhs, &add(&c, &mul(s, x)?, &mul(s, y)?)?)?, "{s}*({x}+{y})");
            for t in &scalars {
                ensure!(eq(&c, &mul(&(s + t), x)?, &add(&c, &mul(s, x)?, &mul(t, x)?)?)?, "({s}+{t})*{x}");
                ensure!(eq(&c, &mul(s, &mul(t, x)?)?, &mul(&(s * t), x)?)?, "{s}*({t}*{x})");
            }
        }
    }
    for x in 0..=6u64 {
        for n in 1..=6u64 {
            for k in 1..=4u64 {
                let a = image(&map, &frac(x, n))?;
                let b = image(&map, &frac(k * x, k * n))?;
                ensure!(eq(&c, &a, &b)?, "{x}/{n} vs {}/{}", k * x, k * n);
                for s in &scalars {
                    ensure!(eq(&c, &mul(s, &a)?, &mul(s, &b)?)?, "{s} on {x}/{n}");
                }
            }
        }
    }
    Ok(())
}

/// Words over the five letters, kept when each step has a table row.
fn walk_table(start: CategoryId, end: CategoryId, max_len: usize) -> BTreeSet<Vec<EmbeddingKind>> {
    let mut frontier = vec![(Vec::new(), start)];
    let mut out = BTreeSet::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, at) in &frontier {
            for a in TYPING_TABLE.iter().filter(|a| a.source == *at) {
                let mut v: Vec<EmbeddingKind> = w.clone();
                v.push(a.kind);
                if a.target == end {
                    out.insert(v.clone());
                }
                next.push((v, a.target));
            }
        }
        frontier = next;
    }
    out
}

fn commuting_diagram() -> Outcome {
    use EmbeddingKind::*;
    let listed: BTreeSet<Vec<EmbeddingKind>> = [
        vec![R, F, D, U],
        vec![R, D, F, U],
        vec![R, D, U, F],
        vec![D, R, F, U],
        vec![D, R, U, F],
        vec![D, U, R, F],
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<_> = enumerate_paths(CategoryId::S, CategoryId::UG, 4).into_iter().collect();
    ensure!(got == listed, "paths S -> UG: {got:?}");
    ensure!(got == walk_table(CategoryId::S, CategoryId::UG, 4), "table walk disagrees");
    let monoids = [
        truncated(3).map_err(|e| e.to_string())?,
        cyclic(2).map_err(|e| e.to_string())?,
        flat(),
        affine(1),
        product(affine(1), cyclic(2).map_err(|e| e.to_string())?),
    ];
    let opts = DiagramOptions { max_len: 4, expr_size: 3, mode: RelationMode::Saturated, ..DiagramOptions::default() };
    for x in monoids {
        let reports = full_diagram_check(&x, &opts);
        ensure!(!reports.is_empty(), "{}: nothing compared", x.name());
        if let Some(r) = reports.iter().find(|r| r.verdict.is_diverge()) {
            return Err(r.to_string());
        }
    }
    Ok(())
}

fn cli_json(text: &str, args: &[&str]) -> Result<(i32, String), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("input.mon");
    std::fs::write(&path, text).map_err(|e| e.to_string())?;
    let mut argv = vec!["embedkit", "--json", "--input", path.to_str().ok_or("path")?];
    argv.extend_from_slice(args);
    let out = embedkit_cli::run(argv);
    Ok((out.code, out.stdout))
}

fn distinct_multiples() -> Outcome {
    let (d, _) = divisible_hull(&affine(1), RelationMode::Saturated).map_err(|e| e.to_string())?;
    let held = check_distinct_multiples(&*d, 6);
    ensure!(held == MultiplesReport::Holds { bound: 6 }, "D(N): {held:?}");
    let f = flat();
    match check_distinct_multiples(&*f, 3) {
        MultiplesReport::CounterexampleFound { x, n1, n2 } => {
            ensure!((f.render(&x).as_str(), n1, n2) == ("∞", 2, 3), "flat witness ({}, {n1}, {n2})", f.render(&x));
        }
        other => return Err(format!("flat: {other:?}")),
    }
    let runs: [(&str, &[&str], i32); 2] = [
        ("kind builtin\nname affine\nparam 1\n", &["check", "--theorem", "p2.1", "--path", "D", "--bound", "6"], 0),
        ("kind builtin\nname flat\n", &["check", "--theorem", "p2.1", "--bound", "3"], 1),
    ];
    for (text, args, code) in runs {
        let first = cli_json(text, args)?;
        let second = cli_json(text, args)?;
        ensure!(first == second, "report differs between runs");
        ensure!(first.0 == code, "exit code {} for {args:?}", first.0);
    }
    let (_, json) = cli_json("kind builtin\nname flat\n", &["check", "--theorem", "p2.1", "--bound", "3"])?;
    ensure!(json.contains("\"∞\",\n        \"2\",\n        \"3\""), "witness missing from report:\n{json}");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("regularization suite", regularization, 5),
        ("formal difference suite", formal_differences, 5),
        ("cancellation boundary", cancellation_boundary, 10),
        ("smith normal form suite", smith_forms, 5),
        ("localization suite", localization, 2),
        ("kernel-pair law", kernel_pairs, 5),
        ("cone axiom suite", cone_axioms, 5),
        ("commuting diagram suite", commuting_diagram, 30),
        ("distinct multiples checker", distinct_multiples, 1),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let took = start.elapsed();
        let result = result.and_then(|()| {
            if took > Duration::from_secs(limit) {
                Err(format!("over the {limit} s limit"))
            } else {
                Ok(())
            }
        });
        match result {
            Ok(()) => println!("PASS {name} ({:.2} s, limit {limit} s)", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({:.2} s, limit {limit} s): {why}", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
