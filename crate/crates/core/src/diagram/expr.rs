use std::fmt;

use num_rational::BigRational;

use crate::embeddings::CanonicalMap;
use crate::monoid::Division;
use crate::{Element, Error, Result};

use super::category::CategoryId;

/// Terms over the generators of a source monoid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormalExpr {
    Gen(usize),
    Zero,
    Add(Box<FormalExpr>, Box<FormalExpr>),
    Neg(Box<FormalExpr>),
    /// The unique `n`-th part.
    Div(Box<FormalExpr>, u64),
    Scale(BigRational, Box<FormalExpr>),
}

impl FormalExpr {
    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            FormalExpr::Gen(_) | FormalExpr::Zero => 1,
            FormalExpr::Add(a, b) => 1 + a.size() + b.size(),
            FormalExpr::Neg(e) | FormalExpr::Div(e, _) | FormalExpr::Scale(_, e) => 1 + e.size(),
        }
    }
}

impl fmt::Display for FormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalExpr::Gen(i) => write!(f, "g{i}"),
            FormalExpr::Zero => write!(f, "0"),
            FormalExpr::Add(a, b) => write!(f, "({a} + {b})"),
            FormalExpr::Neg(e) => write!(f, "-{e}"),
            FormalExpr::Div(e, n) => write!(f, "{e}/{n}"),
            FormalExpr::Scale(q, e) => write!(f, "{q}*{e}"),
        }
    }
}

/// The operations legal in a category: negation in groups, `n`-th parts
/// where they are unique, and scalars in cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprLanguage {
    pub generators: usize,
    pub negation: bool,
    pub divisors: Vec<u64>,
    pub scalars: Vec<BigRational>,
}

impl ExprLanguage {
    pub fn for_category(cat: CategoryId, generators: usize) -> Self {
        ExprLanguage {
            generators,
            negation: cat.has_negation(),
            divisors: if cat.has_unique_parts() { vec![2, 3] } else { Vec::new() },
            scalars: if cat.has_scalars() {
                vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer(2.into())]
            } else {
                Vec::new()
            },
        }
    }

    fn unary(&self, e: &FormalExpr) -> Vec<FormalExpr> {
        let mut out = Vec::new();
        if self.negation {
            out.push(FormalExpr::Neg(Box::new(e.clone())));
        }
        for &n in &self.divisors {
            out.push(FormalExpr::Div(Box::new(e.clone()), n));
        }
        for q in &self.scalars {
            out.push(FormalExpr::Scale(q.clone(), Box::new(e.clone())));
        }
        out
    }

    /// All expressions with at most `max_size` nodes, by size. `Zero` is
    /// never an operand, and `Add(a, b)` appears only with `a <= b`.
    pub fn enumerate(&self, max_size: usize) -> Vec<FormalExpr> {
        let mut levels: Vec<Vec<FormalExpr>> = vec![Vec::new()];
        for size in 1..=max_size {
            let mut level = Vec::new();
            if size == 1 {
                level.extend((0..self.generators).map(FormalExpr::Gen));
                level.push(FormalExpr::Zero);
            } else {
                for i in 1..size - 1 {
                    let j = size - 1 - i;
                    for a in levels[i].iter().filter(|e| **e != FormalExpr::Zero) {
                        for b in levels[j].iter().filter(|e| **e != FormalExpr::Zero && a <= *e) {
                            level.push(FormalExpr::Add(Box::new(a.clone()), Box::new(b.clone())));
                        }
                    }
                }
                for e in levels[size - 1].iter().filter(|e| **e != FormalExpr::Zero) {
                    level.extend(self.unary(e));
                }
            }
            levels.push(level);
        }
        levels.into_iter().flatten().collect()
    }
}

/// Value of `expr` in the target of `map`, with `Gen(i)` sent to the image
/// of `gens[i]`.
pub fn evaluate(expr: &FormalExpr, map: &CanonicalMap, gens: &[Element]) -> Result<Element> {
    let t = map.target();
    match expr {
        FormalExpr::Gen(i) => {
            let g = gens.get(*i).ok_or_else(|| Error::Domain(format!("no generator g{i}")))?;
            map.apply(g)
        }
        FormalExpr::Zero => Ok(t.zero()),
        FormalExpr::Add(a, b) => t.add(&evaluate(a, map, gens)?, &evaluate(b, map, gens)?),
        FormalExpr::Neg(e) => t.negate(&evaluate(e, map, gens)?),
        FormalExpr::Div(e, n) => {
            let v = evaluate(e, map, gens)?;
            match t.divide(&v, *n) {
                Division::Part(p) => Ok(p),
                Division::Impossible => Err(Error::NoRoot { monoid: t.name(), element: v, n: *n }),
                Division::Unknown(bound) => Err(Error::BoundExhausted { left: v.clone(), right: v, bound }),
            }
        }
        FormalExpr::Scale(q, e) => t.scale(q, &evaluate(e, map, gens)?),
    }
}
