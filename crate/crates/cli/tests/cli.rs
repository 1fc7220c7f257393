use std::path::Path;

use embedkit::Bounds;
use embedkit_cli::{parse_presentation, run, Body, Output, Presentation};
use num_bigint::BigUint;
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> Output {
    let mut argv = vec!["embedkit"];
    argv.extend_from_slice(args);
    run(argv)
}

const T3: &str = "monoid T3\nkind builtin\nname truncated\nparam 3\n";
const N: &str = "kind builtin\nname affine\nparam 1\n";

#[test]
fn regularizing_a_truncation_gives_the_trivial_group() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = write(dir.path(), "t3.mon", T3);
    let out = cli(&["apply", "--path", "R,F", "--input", &t3]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("[info] typing: R,F: S -> G"), "{}", out.stdout);
    assert!(out.stdout.contains("[info] structure: trivial group"), "{}", out.stdout);
    assert!(out.stdout.contains("[finding] injective"), "{}", out.stdout);
}

#[test]
fn formal_difference_of_naturals_passes() {
    let dir = tempfile::tempdir().unwrap();
    let n = write(dir.path(), "n.mon", N);
    let out = cli(&["check", "--theorem", "4.2", "--mode", "literal", "--input", &n]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("grothendieck group: Z"), "{}", out.stdout);
    assert!(out.stdout.ends_with("status: pass\n"));
}

#[test]
fn six_paths_from_semigroups_to_uniquely_divisible_groups() {
    let out = cli(&["paths", "--from", "S", "--to", "UG", "--json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let findings = v["findings"].as_array().unwrap();
    assert_eq!(findings.len(), 7);
    assert_eq!(findings[0]["detail"], "6 path(s) from S to UG");
    assert_eq!(findings[1]["check"], "R,F,D,U");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.mon", "kind cayley\nelements e a b\nrow e: e a b\nrow a: a a b\nrow b: b a b\n");
    let out = cli(&["info", "--input", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error: axiom violation"), "{}", out.stderr);

    let syntax = write(dir.path(), "syntax.mon", "kind affine\ndim 2\ngen 1 x\n");
    let out = cli(&["info", "--input", &syntax]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3, column 7"), "{}", out.stderr);

    let t3 = write(dir.path(), "t3.mon", T3);
    assert_eq!(cli(&["apply", "--path", "F", "--input", &t3]).code, 2);
    assert_eq!(cli(&["check", "--theorem", "9.9", "--input", &t3]).code, 2);
    assert_eq!(cli(&["info"]).code, 2);
    assert_eq!(cli(&["info", "--input", &dir.path().join("missing").to_string_lossy()]).code, 2);
    assert_eq!(cli(&["paths", "--from", "S", "--to", "XX"]).code, 2);
    assert_eq!(cli(&["bogus"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn exit_codes_follow_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let flat = write(dir.path(), "flat.mon", "kind builtin\nname flat\n");
    let out = cli(&["check", "--theorem", "p2.1", "--bound", "3", "--input", &flat]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("(witness: ∞, 2, 3)"), "{}", out.stdout);

    let t3 = write(dir.path(), "t3.mon", T3);
    let out = cli(&["check", "--theorem", "4.5", "--input", &t3]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("[inapplicable] hypothesis"), "{}", out.stdout);

    let out = cli(&["check", "--theorem", "p2.1", "--path", "D", "--bound", "6", "--input", &write(dir.path(), "n.mon", N)]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn diagram_reports_commute() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = write(dir.path(), "c2.mon", "kind builtin\nname cyclic\nparam 2\n");
    let out = cli(&["diagram", "--input", &c2, "--json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let findings = v["findings"].as_array().unwrap();
    assert!(findings.len() > 1);
    assert!(findings[1..].iter().all(|f| f["status"] == "pass"));
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let prod = write(
        dir.path(),
        "p.mon",
        "kind product\nleft {\n  kind builtin\n  name affine\n  param 1\n}\nright {\n  kind builtin\n  name cyclic\n  param 2\n}\n",
    );
    for args in [&["info"][..], &["apply", "--path", "D,U"], &["check", "--theorem", "4.3"], &["diagram", "--max-len", "3"]] {
        let mut full = args.to_vec();
        full.extend(["--json", "--input", &prod]);
        let a = cli(&full);
        let b = cli(&full);
        assert_eq!(a, b, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["exit_code"], a.code);
        assert!(!a.stdout.contains(dir.path().to_str().unwrap()));
    }
}

#[test]
fn paths_need_no_input() {
    let out = cli(&["paths", "--from", "RS", "--to", "DG", "--max-len", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("[info] F,D: RS -> G -> DG"), "{}", out.stdout);
    assert_eq!(cli(&["paths", "--from", "S", "--to", "UG", "--max-len", "7"]).code, 2);
}

fn label() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,3}"
}

fn naturals(len: usize) -> impl Strategy<Value = Vec<BigUint>> {
    vec((0u32..5).prop_map(BigUint::from), len)
}

fn leaf() -> impl Strategy<Value = Body> {
    prop_oneof![
        btree_set(label(), 1..4).prop_flat_map(|set| {
            let elements: Vec<String> = set.into_iter().collect();
            let n = elements.len();
            vec(vec(0..n, n), n).prop_map(move |rows| Body::Cayley { elements: elements.clone(), rows })
        }),
        (1usize..3).prop_flat_map(|dim| {
            vec(naturals(dim), 1..3).prop_map(move |gens| Body::Affine { dim, gens })
        }),
        (1usize..3).prop_flat_map(|gens| {
            vec((naturals(gens), naturals(gens)), 0..3).prop_map(move |relations| Body::Fp { gens, relations })
        }),
        (label(), vec(0u64..7, 0..3)).prop_map(|(name, params)| Body::Builtin { name, params }),
    ]
}

fn presentation() -> impl Strategy<Value = Presentation> {
    let leaf = (proptest::option::of(label()), leaf()).prop_map(|(name, body)| Presentation { name, body });
    leaf.prop_recursive(2, 6, 2, |inner| {
        (proptest::option::of(label()), inner.clone(), inner).prop_map(|(name, l, r)| Presentation {
            name,
            body: Body::Product { left: Box::new(l), right: Box::new(r) },
        })
    })
}

proptest! {
    #[test]
    fn presentations_round_trip(p in presentation()) {
        let text = p.to_string();
        let back = Presentation::parse(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn parsed_builtins_match_the_catalog() {
    let m = parse_presentation(T3, Bounds::default()).unwrap();
    assert_eq!(m.cardinality(), Some(4));
    assert_eq!(m.name(), "truncated(3)");
}
