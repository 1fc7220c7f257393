use num_rational::BigRational;

use crate::lattice::AbelianGroupStructure;
use crate::monoid::{Backend, Bounds, Division, Monoid, MonoidValue};
use crate::{CategoryFlags, Element, EqResult, Error, Result};

/// Componentwise direct product `X x Y`.
#[derive(Debug)]
pub struct Product {
    left: MonoidValue,
    right: MonoidValue,
}

impl Product {
    pub fn new(left: MonoidValue, right: MonoidValue) -> Self {
        Product { left, right }
    }

    pub fn left(&self) -> &MonoidValue {
        &self.left
    }

    pub fn right(&self) -> &MonoidValue {
        &self.right
    }

    fn split<'a>(&self, e: &'a Element) -> Result<(&'a Element, &'a Element)> {
        match e {
            Element::Tuple(a, b) => Ok((a, b)),
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name()))),
        }
    }

    fn both(&self, a: &Element, b: &Element, f: impl Fn(&MonoidValue, &Element, &Element) -> EqResult) -> EqResult {
        match (self.split(a), self.split(b)) {
            (Ok((a1, a2)), Ok((b1, b2))) => f(&self.left, a1, b1).and(f(&self.right, a2, b2)),
            _ => EqResult::NotEqual,
        }
    }
}

impl Monoid for Product {
    fn name(&self) -> String {
        format!("product({}, {})", self.left.name(), self.right.name())
    }

    fn backend(&self) -> Backend {
        Backend::Derived
    }

    fn bounds(&self) -> Bounds {
        let (l, r) = (self.left.bounds(), self.right.bounds());
        Bounds {
            search: l.search.max(r.search),
            rewrite_states: l.rewrite_states.max(r.rewrite_states),
        }
    }

    fn flags(&self) -> CategoryFlags {
        self.left.flags().product(&self.right.flags())
    }

    fn zero(&self) -> Element {
        Element::tuple(self.left.zero(), self.right.zero())
    }

    fn generators(&self) -> Vec<Element> {
        let mut gens: Vec<Element> =
            self.left.generators().into_iter().map(|g| Element::tuple(g, self.right.zero())).collect();
        gens.extend(self.right.generators().into_iter().map(|g| Element::tuple(self.left.zero(), g)));
        gens
    }

    fn contains(&self, e: &Element) -> bool {
        matches!(e, Element::Tuple(a, b) if self.left.contains(a) && self.right.contains(b))
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let ((a1, a2), (b1, b2)) = (self.split(a)?, self.split(b)?);
        Ok(Element::tuple(self.left.add(a1, b1)?, self.right.add(a2, b2)?))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        self.both(a, b, |m, x, y| m.eq(x, y))
    }

    fn cancel_eq(&self, a: &Element, b: &Element) -> EqResult {
        self.both(a, b, |m, x, y| m.cancel_eq(x, y))
    }

    /// `n1*a1 = n1*b1` and `n2*a2 = n2*b2` give `n1*n2*a = n1*n2*b`.
    fn torsion_eq(&self, a: &Element, b: &Element) -> EqResult {
        self.both(a, b, |m, x, y| m.torsion_eq(x, y))
    }

    fn enumerate(&self) -> Option<Vec<Element>> {
        let (l, r) = (self.left.enumerate()?, self.right.enumerate()?);
        Some(l.iter().flat_map(|a| r.iter().map(move |b| Element::tuple(a.clone(), b.clone()))).collect())
    }

    fn sample(&self, depth: usize) -> Vec<Element> {
        let (l, r) = (self.left.sample(depth), self.right.sample(depth));
        let mut out: Vec<Element> =
            l.iter().flat_map(|a| r.iter().map(move |b| Element::tuple(a.clone(), b.clone()))).collect();
        out.sort_by_key(|e| e.descriptor_size());
        out
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        let (a, b) = self.split(e)?;
        Ok(Element::tuple(self.left.negate(a)?, self.right.negate(b)?))
    }

    fn divide(&self, e: &Element, n: u64) -> Division {
        let Ok((a, b)) = self.split(e) else { return Division::Impossible };
        match (self.left.divide(a, n), self.right.divide(b, n)) {
            (Division::Part(x), Division::Part(y)) => Division::Part(Element::tuple(x, y)),
            (Division::Impossible, _) | (_, Division::Impossible) => Division::Impossible,
            (Division::Unknown(k), _) | (_, Division::Unknown(k)) => Division::Unknown(k),
        }
    }

    fn scale(&self, q: &BigRational, e: &Element) -> Result<Element> {
        let (a, b) = self.split(e)?;
        Ok(Element::tuple(self.left.scale(q, a)?, self.right.scale(q, b)?))
    }

    fn rational_image(&self, e: &Element) -> Option<Vec<BigRational>> {
        let (a, b) = self.split(e).ok()?;
        let mut v = self.left.rational_image(a)?;
        v.extend(self.right.rational_image(b)?);
        Some(v)
    }

    fn image_detects_torsion(&self) -> bool {
        self.left.image_detects_torsion() && self.right.image_detects_torsion()
    }

    fn render(&self, e: &Element) -> String {
        match e {
            Element::Tuple(a, b) => format!("({}, {})", self.left.render(a), self.right.render(b)),
            other => other.to_string(),
        }
    }

    fn grothendieck(&self) -> Option<AbelianGroupStructure> {
        Some(self.left.grothendieck()?.direct_sum(&self.right.grothendieck()?))
    }
}
