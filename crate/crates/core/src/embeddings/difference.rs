use num_rational::BigRational;

use crate::lattice::AbelianGroupStructure;
use crate::monoid::{default_torsion_eq, Backend, Bounds, Division, Monoid, MonoidValue};
use crate::predicates::is_cancellative;
use crate::{CategoryFlags, Decision, Element, EqResult, Error, Result, TriState};

use super::{finish, CanonicalMap, EmbeddingKind, RelationMode};

/// Formal differences `(y, z)`, read as `z - y`.
#[derive(Debug)]
pub struct Difference {
    inner: MonoidValue,
    mode: RelationMode,
    flags: CategoryFlags,
}

impl Difference {
    pub fn new(inner: MonoidValue, mode: RelationMode) -> Self {
        let x = inner.flags();
        let torsion_free = if x.is_cancellative.is_true() && x.is_torsion_free.is_true() {
            TriState::True
        } else {
            match (mode, inner.grothendieck()) {
                (RelationMode::Saturated, Some(g)) => TriState::from_bool(g.torsion.is_empty()),
                _ => TriState::Unknown(inner.bounds().search),
            }
        };
        let flags = CategoryFlags {
            is_cancellative: TriState::True,
            is_group: TriState::True,
            is_divisible: x.is_divisible.only_true(),
            is_torsion_free: torsion_free,
            is_cone: x.is_cone,
            ..Default::default()
        }
        .normalized();
        Difference { inner, mode, flags }
    }

    fn split<'a>(&self, e: &'a Element) -> Result<(&'a Element, &'a Element)> {
        match e {
            Element::Pair(y, z) => Ok((y, z)),
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name()))),
        }
    }

    /// `y1 + z2` and `y2 + z1`.
    fn cross(&self, a: &Element, b: &Element) -> Result<(Element, Element)> {
        let ((y1, z1), (y2, z2)) = (self.split(a)?, self.split(b)?);
        Ok((self.inner.add(y1, z2)?, self.inner.add(y2, z1)?))
    }
}

impl Monoid for Difference {
    fn name(&self) -> String {
        format!("F({})", self.inner.name())
    }

    fn backend(&self) -> Backend {
        Backend::Derived
    }

    fn bounds(&self) -> Bounds {
        self.inner.bounds()
    }

    fn flags(&self) -> CategoryFlags {
        self.flags
    }

    fn zero(&self) -> Element {
        Element::pair(self.inner.zero(), self.inner.zero())
    }

    fn generators(&self) -> Vec<Element> {
        self.inner.generators().into_iter().map(|g| Element::pair(self.inner.zero(), g)).collect()
    }

    fn contains(&self, e: &Element) -> bool {
        matches!(e, Element::Pair(y, z) if self.inner.contains(y) && self.inner.contains(z))
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let ((y1, z1), (y2, z2)) = (self.split(a)?, self.split(b)?);
        Ok(Element::pair(self.inner.add(y1, y2)?, self.inner.add(z1, z2)?))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        let Ok((l, r)) = self.cross(a, b) else { return EqResult::NotEqual };
        match self.mode {
            RelationMode::Literal => self.inner.eq(&l, &r),
            RelationMode::Saturated => self.inner.cancel_eq(&l, &r),
        }
    }

    fn torsion_eq(&self, a: &Element, b: &Element) -> EqResult {
        if self.image_detects_torsion() {
            if let (Some(x), Some(y)) = (self.rational_image(a), self.rational_image(b)) {
                return EqResult::from_bool(x == y);
            }
        }
        if let Ok((l, r)) = self.cross(a, b) {
            if self.inner.torsion_eq(&l, &r).is_equal() {
                return EqResult::Equal;
            }
        }
        default_torsion_eq(self, a, b)
    }

    fn sample(&self, depth: usize) -> Vec<Element> {
        let base = self.inner.sample(depth.div_ceil(2));
        let mut out: Vec<Element> =
            base.iter().flat_map(|y| base.iter().map(move |z| Element::pair(y.clone(), z.clone()))).collect();
        out.sort_by_key(|e| e.descriptor_size());
        out
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        let (y, z) = self.split(e)?;
        Ok(Element::pair(z.clone(), y.clone()))
    }

    fn divide(&self, e: &Element, n: u64) -> Division {
        let Ok((y, z)) = self.split(e) else { return Division::Impossible };
        match (self.inner.divide(y, n), self.inner.divide(z, n)) {
            (Division::Part(a), Division::Part(b)) => Division::Part(Element::pair(a, b)),
            _ => Division::Unknown(self.bounds().search),
        }
    }

    fn scale(&self, q: &BigRational, e: &Element) -> Result<Element> {
        let (y, z) = self.split(e)?;
        Ok(Element::pair(self.inner.scale(q, y)?, self.inner.scale(q, z)?))
    }

    fn rational_image(&self, e: &Element) -> Option<Vec<BigRational>> {
        let (y, z) = self.split(e).ok()?;
        let (py, pz) = (self.inner.rational_image(y)?, self.inner.rational_image(z)?);
        Some(pz.into_iter().zip(py).map(|(a, b)| a - b).collect())
    }

    fn image_detects_torsion(&self) -> bool {
        self.mode == RelationMode::Saturated && self.inner.image_detects_torsion()
    }

    fn render(&self, e: &Element) -> String {
        match e {
            Element::Pair(y, z) => format!("({}, {})", self.inner.render(y), self.inner.render(z)),
            other => other.to_string(),
        }
    }

    fn grothendieck(&self) -> Option<AbelianGroupStructure> {
        self.inner.grothendieck()
    }
}

/// Group completion by formal differences. Literal mode requires a
/// cancellative source and reports a witness otherwise.
pub fn formal_difference(x: &MonoidValue, mode: RelationMode) -> Result<(MonoidValue, CanonicalMap)> {
    if mode == RelationMode::Literal {
        match is_cancellative(&**x, x.bounds().search) {
            Decision::True => {}
            Decision::False(w) => return Err(Error::NotCancellative { x: w.x, y: w.y, z: w.z }),
            Decision::Unknown(b) => {
                return Err(Error::Inapplicable(format!(
                    "cancellativity of {} undecided within bound {b}",
                    x.name()
                )))
            }
        }
    }
    let lazy = MonoidValue::new(Difference::new(x.clone(), mode));
    let seeds = x
        .enumerate()
        .map(|all| all.iter().flat_map(|y| all.iter().map(move |z| Element::pair(y.clone(), z.clone()))).collect());
    let zero = x.zero();
    finish(EmbeddingKind::F, x, lazy, seeds, move |e| Ok(Element::pair(zero.clone(), e.clone())))
}

/// `-e` in a group, e.g. the swap `(y, z) -> (z, y)` on formal differences.
pub fn negate(g: &MonoidValue, e: &Element) -> Result<Element> {
    if !g.contains(e) {
        return Err(Error::Domain(format!("{e} is not an element of {}", g.name())));
    }
    g.negate(e)
}
