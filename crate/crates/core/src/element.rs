//! Opaque element values shared by every backend and construction.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A tagged element. Which variants a monoid accepts is decided by
/// [`Monoid::contains`](crate::Monoid::contains).
///
/// The derived `Ord` is the fixed total order used for canonical
/// representatives, cone normalization and report ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Row index into a finite addition table.
    Index(usize),
    /// Point of `N^d` inside an affine monoid.
    Vector(Vec<BigUint>),
    /// Exponent vector over the generators of a presented monoid.
    Word(Vec<BigUint>),
    /// Component pair of a direct product.
    Tuple(Box<Element>, Box<Element>),
    /// Formal difference `(y, z)` standing for `z - y`.
    Pair(Box<Element>, Box<Element>),
    /// Formal fraction `(x, n)` standing for `x / n`, `n >= 1`.
    Fraction(Box<Element>, BigUint),
    /// Class index of a materialized quotient.
    Class(usize),
    /// Finite nonnegative combination `sum q_k * x_k`, normalized.
    Combo(Vec<(BigRational, Element)>),
}

impl Element {
    pub fn vector<I: IntoIterator<Item = u64>>(entries: I) -> Self {
        Element::Vector(entries.into_iter().map(BigUint::from).collect())
    }

    pub fn word<I: IntoIterator<Item = u64>>(entries: I) -> Self {
        Element::Word(entries.into_iter().map(BigUint::from).collect())
    }

    pub fn tuple(a: Element, b: Element) -> Self {
        Element::Tuple(Box::new(a), Box::new(b))
    }

    pub fn pair(y: Element, z: Element) -> Self {
        Element::Pair(Box::new(y), Box::new(z))
    }

    pub fn fraction(x: Element, n: impl Into<BigUint>) -> Self {
        Element::Fraction(Box::new(x), n.into())
    }

    /// Builds a normalized combination: zero scalars dropped, equal bases
    /// merged, terms sorted by base.
    pub fn combo<I: IntoIterator<Item = (BigRational, Element)>>(terms: I) -> Self {
        let mut terms: Vec<(BigRational, Element)> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(BigRational, Element)> = Vec::with_capacity(terms.len());
        for (q, base) in terms {
            match merged.last_mut() {
                Some((acc, last)) if *last == base => *acc += q,
                _ => merged.push((q, base)),
            }
        }
        merged.retain(|(q, _)| !q.is_zero());
        Element::Combo(merged)
    }

    /// Size of the element description, used to order samples.
    pub fn descriptor_size(&self) -> usize {
        fn big(n: &BigUint) -> usize {
            n.iter_u64_digits().next().unwrap_or(0).min(1 << 20) as usize
        }
        match self {
            Element::Index(i) | Element::Class(i) => *i,
            Element::Vector(v) | Element::Word(v) => v.iter().map(big).sum(),
            Element::Tuple(a, b) | Element::Pair(a, b) => a.descriptor_size() + b.descriptor_size(),
            Element::Fraction(x, n) => x.descriptor_size() + big(n),
            Element::Combo(terms) => terms.iter().map(|(_, e)| 1 + e.descriptor_size()).sum(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "{i}"),
            Element::Vector(v) | Element::Word(v) => {
                if let [single] = v.as_slice() {
                    write!(f, "{single}")
                } else {
                    write!(f, "(")?;
                    for (i, x) in v.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{x}")?;
                    }
                    write!(f, ")")
                }
            }
            Element::Tuple(a, b) | Element::Pair(a, b) => write!(f, "({a}, {b})"),
            Element::Fraction(x, n) => write!(f, "{x}/{n}"),
            Element::Class(c) => write!(f, "#{c}"),
            Element::Combo(terms) => write_combo(f, terms, |e| e.to_string()),
        }
    }
}

pub(crate) fn write_combo(
    f: &mut impl fmt::Write,
    terms: &[(BigRational, Element)],
    render: impl Fn(&Element) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (q, e)) in terms.iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        if q.denom().is_one() {
            write!(f, "{}*[{}]", q.numer(), render(e))?;
        } else {
            write!(f, "{}/{}*[{}]", q.numer(), q.denom(), render(e))?;
        }
    }
    Ok(())
}
