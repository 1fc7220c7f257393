use embedkit::catalog::{affine, builtin_catalog, cyclic, flat, fp, product, truncated};
use embedkit::predicates::{is_cancellative, is_divisible, is_torsion_free, is_uniquely_divisible};
use embedkit::{nsum, Decision, Element, MonoidValue};
use num_bigint::BigUint;

fn finite_catalog() -> Vec<MonoidValue> {
    builtin_catalog().into_iter().filter(|m| m.is_finite()).collect()
}

#[test]
fn small_monoids_satisfy_the_axioms() {
    for m in finite_catalog() {
        let all = m.enumerate().unwrap();
        if all.len() > 6 {
            continue;
        }
        let add = |a: &Element, b: &Element| m.add(a, b).unwrap();
        for a in &all {
            assert_eq!(add(a, &m.zero()), *a, "{}", m.name());
            for b in &all {
                assert_eq!(add(a, b), add(b, a), "{}", m.name());
                for c in &all {
                    assert_eq!(add(&add(a, b), c), add(a, &add(b, c)), "{}", m.name());
                }
            }
        }
    }
}

#[test]
fn multiples_are_additive() {
    for m in builtin_catalog() {
        for x in m.enumerate().unwrap_or_else(|| m.sample(4)) {
            for a in 0..=16u64 {
                for b in 0..=16u64 {
                    let lhs = nsum(&*m, &x, a + b).unwrap();
                    let rhs = m.add(&nsum(&*m, &x, a).unwrap(), &nsum(&*m, &x, b).unwrap()).unwrap();
                    assert!(m.eq(&lhs, &rhs).is_equal(), "{} at {x}, {a}, {b}", m.name());
                }
            }
        }
    }
}

#[test]
fn cancellation_matches_triple_loop() {
    for m in finite_catalog() {
        let all = m.enumerate().unwrap();
        if all.len() > 6 {
            continue;
        }
        let naive = all.iter().all(|x| {
            all.iter().all(|y| all.iter().all(|z| y == z || m.add(x, y).unwrap() != m.add(x, z).unwrap()))
        });
        match is_cancellative(&*m, 64) {
            Decision::True => assert!(naive, "{}", m.name()),
            Decision::False(w) => {
                assert!(!naive, "{}", m.name());
                assert_ne!(w.y, w.z);
                assert_eq!(m.add(&w.x, &w.y).unwrap(), m.add(&w.x, &w.z).unwrap());
            }
            Decision::Unknown(_) => panic!("finite monoid left undecided"),
        }
    }
}

#[test]
fn decisions_are_stable_under_larger_bounds() {
    let mut monoids = builtin_catalog();
    monoids.push(fp(1, vec![(vec![BigUint::from(2u32)], vec![BigUint::from(1u32)])]).unwrap());
    for m in monoids {
        for bound in [4usize, 8, 16] {
            let pairs = [
                (is_cancellative(&*m, bound).tri(), is_cancellative(&*m, 2 * bound).tri()),
                (is_divisible(&*m, bound).tri(), is_divisible(&*m, 2 * bound).tri()),
                (is_torsion_free(&*m, bound).tri(), is_torsion_free(&*m, 2 * bound).tri()),
                (is_uniquely_divisible(&*m, bound).tri(), is_uniquely_divisible(&*m, 2 * bound).tri()),
            ];
            for (small, large) in pairs {
                if !matches!(small, embedkit::TriState::Unknown(_)) {
                    assert_eq!(small, large, "{} at {bound}", m.name());
                }
            }
        }
    }
}

#[test]
fn catalog_examples() {
    let t = truncated(3).unwrap();
    assert_eq!(t.add(&Element::Index(2), &Element::Index(2)).unwrap(), Element::Index(3));
    let c = cyclic(3).unwrap();
    assert_eq!(c.add(&Element::Index(2), &Element::Index(2)).unwrap(), Element::Index(1));
    let a = affine(2);
    assert_eq!(a.add(&Element::vector([1, 0]), &Element::vector([0, 1])).unwrap(), Element::vector([1, 1]));
    let p = product(affine(1), cyclic(2).unwrap());
    let x = Element::tuple(Element::vector([3]), Element::Index(1));
    let y = Element::tuple(Element::vector([2]), Element::Index(1));
    assert_eq!(p.add(&x, &y).unwrap(), Element::tuple(Element::vector([5]), Element::Index(0)));
    assert_eq!(product(cyclic(2).unwrap(), cyclic(3).unwrap()).cardinality(), Some(6));
    let tt = product(truncated(1).unwrap(), truncated(1).unwrap());
    assert!(matches!(is_cancellative(&*tt, 64), Decision::False(_)));
    assert!(is_uniquely_divisible(&*flat(), 64).is_true());
    assert!(fp(0, Vec::new()).is_err());
}
