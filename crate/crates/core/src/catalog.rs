//! Named example monoids.

use num_bigint::BigUint;

use crate::backends::cayley::numeric_labels;
use crate::backends::{Affine, Cayley, Presented, Product, Relation};
use crate::monoid::{Bounds, MonoidValue};
use crate::{Error, Result};

/// `(N^d, +)`.
pub fn affine(d: usize) -> MonoidValue {
    MonoidValue::new(Affine::standard(d))
}

/// `Z/n`, generated by `1`.
pub fn cyclic(n: usize) -> Result<MonoidValue> {
    Ok(MonoidValue::new(cyclic_table(n)?))
}

fn cyclic_table(n: usize) -> Result<Cayley> {
    if n == 0 {
        return Err(Error::Presentation("cyclic(0) is not finite".into()));
    }
    let m = Cayley::from_fn(format!("cyclic({n})"), numeric_labels(n), |a, b| (a + b) % n)?;
    let gens = if n > 1 { vec![1] } else { vec![] };
    Ok(m.with_generators(gens))
}

/// `{0..k}` with `a + b = min(a + b, k)`, generated by `1`.
pub fn truncated(k: usize) -> Result<MonoidValue> {
    Ok(MonoidValue::new(truncated_table(k)?))
}

fn truncated_table(k: usize) -> Result<Cayley> {
    let m = Cayley::from_fn(format!("truncated({k})"), numeric_labels(k + 1), |a, b| (a + b).min(k))?;
    let gens = if k > 0 { vec![1] } else { vec![] };
    Ok(m.with_generators(gens))
}

/// `{0, ∞}` with `∞ + ∞ = ∞`.
pub fn flat() -> MonoidValue {
    MonoidValue::new(flat_table())
}

fn flat_table() -> Cayley {
    Cayley::new("flat()", vec!["0".into(), "∞".into()], vec![vec![0, 1], vec![1, 1]])
        .expect("valid table")
        .with_generators(vec![1])
}

/// `<e_1..e_m | u_i = v_i>`.
pub fn fp(m: usize, relations: Vec<Relation>) -> Result<MonoidValue> {
    fp_with_bounds(m, relations, Bounds::default())
}

pub fn fp_with_bounds(m: usize, relations: Vec<Relation>, bounds: Bounds) -> Result<MonoidValue> {
    let name = format!("fp({m}, {})", render_relations(&relations));
    Ok(MonoidValue::new(Presented::new(name, m, relations, bounds)?))
}

fn render_relations(relations: &[Relation]) -> String {
    let side = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let parts: Vec<String> = relations.iter().map(|(u, v)| format!("{} -> {}", side(u), side(v))).collect();
    format!("[{}]", parts.join("; "))
}

pub fn product(x: MonoidValue, y: MonoidValue) -> MonoidValue {
    MonoidValue::new(Product::new(x, y))
}

/// Looks up a catalog entry by name with integer parameters.
pub fn builtin(name: &str, params: &[u64]) -> Result<MonoidValue> {
    builtin_with_bounds(name, params, Bounds::default())
}

pub fn builtin_with_bounds(name: &str, params: &[u64], bounds: Bounds) -> Result<MonoidValue> {
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::Presentation(format!("builtin {name} takes {n} parameter(s), got {}", params.len())))
        }
    };
    let small = |p: u64| usize::try_from(p).map_err(|_| Error::Presentation(format!("parameter {p} too large")));
    match name {
        "affine" => {
            arity(1)?;
            Ok(MonoidValue::new(Affine::standard(small(params[0])?).with_bounds(bounds)))
        }
        "cyclic" => {
            arity(1)?;
            Ok(MonoidValue::new(cyclic_table(small(params[0])?)?.with_bounds(bounds)))
        }
        "truncated" => {
            arity(1)?;
            Ok(MonoidValue::new(truncated_table(small(params[0])?)?.with_bounds(bounds)))
        }
        "flat" => {
            arity(0)?;
            Ok(MonoidValue::new(flat_table().with_bounds(bounds)))
        }
        other => Err(Error::Presentation(format!("unknown builtin `{other}`"))),
    }
}

/// The standard example list: `affine(1)`, `affine(2)`, `cyclic(2..=6)`,
/// `truncated(1..=4)`, `flat()` and three products.
pub fn builtin_catalog() -> Vec<MonoidValue> {
    let mut out = vec![affine(1), affine(2)];
    out.extend((2..=6).map(|n| cyclic(n).expect("n >= 1")));
    out.extend((1..=4).map(|k| truncated(k).expect("valid table")));
    out.push(flat());
    out.push(product(affine(1), cyclic(2).expect("n >= 1")));
    out.push(product(cyclic(2).expect("n >= 1"), cyclic(3).expect("n >= 1")));
    out.push(product(truncated(1).expect("valid table"), truncated(1).expect("valid table")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Element;

    #[test]
    fn catalog_additions() {
        let t3 = truncated(3).unwrap();
        assert_eq!(t3.add(&Element::Index(2), &Element::Index(2)).unwrap(), Element::Index(3));
        let c3 = cyclic(3).unwrap();
        assert_eq!(c3.add(&Element::Index(2), &Element::Index(2)).unwrap(), Element::Index(1));
        let n2 = affine(2);
        assert_eq!(n2.add(&Element::vector([1, 0]), &Element::vector([0, 1])).unwrap(), Element::vector([1, 1]));
    }

    #[test]
    fn product_cardinality_and_addition() {
        let p = product(cyclic(2).unwrap(), cyclic(3).unwrap());
        assert_eq!(p.cardinality(), Some(6));
        let q = product(affine(1), cyclic(2).unwrap());
        let a = Element::tuple(Element::vector([3]), Element::Index(1));
        let b = Element::tuple(Element::vector([2]), Element::Index(1));
        assert_eq!(q.add(&a, &b).unwrap(), Element::tuple(Element::vector([5]), Element::Index(0)));
    }

    #[test]
    fn fp_needs_generators() {
        assert!(matches!(fp(0, vec![]), Err(Error::Presentation(_))));
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin("bogus", &[]), Err(Error::Presentation(_))));
        assert!(builtin("cyclic", &[]).is_err());
    }
}
