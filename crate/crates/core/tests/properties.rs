use embedkit::catalog::{affine, cyclic, product};
use embedkit::diagram::{apply_path, evaluate, parse_path, CategoryId, ExprLanguage, FormalExpr};
use embedkit::lattice::smith_normal_form;
use embedkit::{divisible_hull, nsum, Element, EqResult, Matrix, RelationMode};
use proptest::prelude::*;

proptest! {
    #[test]
    fn hull_matches_cross_multiplication(a in 0u64..200, b in 1u64..50, c in 0u64..200, d in 1u64..50) {
        let (h, _) = divisible_hull(&affine(1), RelationMode::Saturated).unwrap();
        let x = Element::fraction(Element::vector([a]), b);
        let y = Element::fraction(Element::vector([c]), d);
        prop_assert_eq!(h.eq(&x, &y), EqResult::from_bool(a * d == b * c));
    }

    #[test]
    fn multiples_add_up(v in proptest::collection::vec(0u64..20, 2), m in 0u64..30, n in 0u64..30) {
        let x = affine(2);
        let e = Element::vector(v);
        let lhs = nsum(&*x, &e, m + n).unwrap();
        let rhs = x.add(&nsum(&*x, &e, m).unwrap(), &nsum(&*x, &e, n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_diagonal_divides(rows in proptest::collection::vec(proptest::collection::vec(-20i64..20, 3), 1..5)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let a: Matrix<i64> = Matrix::from_i64(&refs);
        let f = smith_normal_form(&a);
        prop_assert_eq!(&(&f.u * &a) * &f.v, f.s.clone());
        let d = f.invariant_factors();
        for w in d.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn evaluation_is_additive(i in 0usize..2, j in 0usize..2) {
        let x = product(affine(1), cyclic(2).unwrap());
        let (t, map) = apply_path(&x, &parse_path("R,F,D,U").unwrap(), RelationMode::Saturated).unwrap();
        let gens = x.generators();
        let (a, b) = (FormalExpr::Gen(i), FormalExpr::Gen(j));
        let sum = FormalExpr::Add(Box::new(a.clone()), Box::new(b.clone()));
        let lhs = evaluate(&sum, &map, &gens).unwrap();
        let rhs = t.add(&evaluate(&a, &map, &gens).unwrap(), &evaluate(&b, &map, &gens).unwrap()).unwrap();
        prop_assert!(t.eq(&lhs, &rhs).is_equal());
    }
}

#[test]
fn languages_grow_with_size() {
    for cat in CategoryId::ALL {
        let lang = ExprLanguage::for_category(cat, 2);
        let small = lang.enumerate(2);
        let large = lang.enumerate(3);
        assert!(large.starts_with(&small));
        assert!(large.iter().all(|e| e.size() <= 3));
    }
}
