use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::monoid::{nsum, Backend, Bounds, Division, Monoid, MonoidValue};
use crate::predicates::is_torsion_free;
use crate::predicates::UniqueDivisionWitness;
use crate::{CategoryFlags, Decision, Element, EqResult, Error, Result, TriState};

use super::{finish, CanonicalMap, EmbeddingKind, RelationMode};

/// Denominators whose prime factors are tried when shortening fractions.
const NORMALIZE_LIMIT: u64 = 1 << 16;

/// Formal fractions `(x, n)`, read as `x / n`.
#[derive(Debug)]
pub struct Hull {
    inner: MonoidValue,
    mode: RelationMode,
    flags: CategoryFlags,
}

impl Hull {
    pub fn new(inner: MonoidValue, mode: RelationMode) -> Self {
        let x = inner.flags();
        let torsion_free = match mode {
            RelationMode::Saturated => TriState::True,
            RelationMode::Literal => x.is_torsion_free.only_true(),
        };
        let flags = CategoryFlags {
            is_cancellative: x.is_cancellative.only_true(),
            is_group: x.is_group.only_true(),
            is_divisible: TriState::True,
            is_torsion_free: torsion_free,
            is_cone: x.is_cone,
            ..Default::default()
        }
        .normalized();
        Hull { inner, mode, flags }
    }

    fn split<'a>(&self, e: &'a Element) -> Result<(&'a Element, u64)> {
        match e {
            Element::Fraction(x, n) if !n.is_zero() => {
                let n = n.to_u64().ok_or_else(|| Error::Domain(format!("denominator {n} too large")))?;
                Ok((x, n))
            }
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name()))),
        }
    }

    /// Replaces `(x, n)` by `(y, n/p)` while some prime `p | n` has a
    /// `p`-th part `y` of `x`. Saturated mode only.
    fn normalize(&self, x: Element, n: u64) -> Element {
        if self.mode == RelationMode::Literal || n == 1 || n > NORMALIZE_LIMIT {
            return Element::fraction(x, n);
        }
        let (mut x, mut n) = (x, n);
        for p in prime_factors(n) {
            while n % p == 0 {
                match self.inner.divide(&x, p) {
                    Division::Part(y) => {
                        x = y;
                        n /= p;
                    }
                    _ => break,
                }
            }
        }
        Element::fraction(x, n)
    }

    fn relate(&self, a: &Element, b: &Element) -> Result<EqResult> {
        let ((x1, n1), (x2, n2)) = (self.split(a)?, self.split(b)?);
        Ok(match self.mode {
            RelationMode::Literal => self.inner.eq(&nsum(&*self.inner, x1, n2)?, &nsum(&*self.inner, x2, n1)?),
            RelationMode::Saturated => {
                let g = n1.gcd(&n2);
                self.inner.torsion_eq(&nsum(&*self.inner, x1, n2 / g)?, &nsum(&*self.inner, x2, n1 / g)?)
            }
        })
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Monoid for Hull {
    fn name(&self) -> String {
        format!("D({})", self.inner.name())
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
        Element::fraction(self.inner.zero(), 1u32)
    }

    fn generators(&self) -> Vec<Element> {
        self.inner.generators().into_iter().map(|g| Element::fraction(g, 1u32)).collect()
    }

    fn contains(&self, e: &Element) -> bool {
        matches!(e, Element::Fraction(x, n) if !n.is_zero() && self.inner.contains(x))
    }

    /// `(x1, n1) + (x2, n2) = ((l/n1)*x1 + (l/n2)*x2, l)` with `l = lcm(n1, n2)`,
    /// which is related to `(n2*x1 + n1*x2, n1*n2)`.
    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let ((x1, n1), (x2, n2)) = (self.split(a)?, self.split(b)?);
        let l = n1.lcm(&n2);
        let sum = self.inner.add(&nsum(&*self.inner, x1, l / n1)?, &nsum(&*self.inner, x2, l / n2)?)?;
        Ok(self.normalize(sum, l))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        if a == b {
            return EqResult::Equal;
        }
        self.relate(a, b).unwrap_or(EqResult::NotEqual)
    }

    fn sample(&self, depth: usize) -> Vec<Element> {
        let base = self.inner.sample(depth);
        let mut out: Vec<Element> = base
            .iter()
            .flat_map(|x| (1..=depth.max(1) as u64).map(move |n| Element::fraction(x.clone(), n)))
            .collect();
        out.sort_by_key(|e| e.descriptor_size());
        out
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        let (x, n) = self.split(e)?;
        Ok(Element::fraction(self.inner.negate(x)?, n))
    }

    /// `(x, n) / k = (x, n*k)`.
    fn divide(&self, e: &Element, k: u64) -> Division {
        match self.split(e) {
            Ok((x, n)) if k > 0 => match n.checked_mul(k) {
                Some(nk) => Division::Part(self.normalize(x.clone(), nk)),
                None => Division::Part(Element::fraction(x.clone(), BigUint::from(n) * k)),
            },
            _ => Division::Impossible,
        }
    }

    fn scale(&self, q: &BigRational, e: &Element) -> Result<Element> {
        let (x, n) = self.split(e)?;
        Ok(Element::fraction(self.inner.scale(q, x)?, n))
    }

    fn rational_image(&self, e: &Element) -> Option<Vec<BigRational>> {
        let (x, n) = self.split(e).ok()?;
        let d = BigRational::from_integer(n.into());
        Some(self.inner.rational_image(x)?.into_iter().map(|v| v / &d).collect())
    }

    fn image_detects_torsion(&self) -> bool {
        self.mode == RelationMode::Saturated && self.inner.image_detects_torsion()
    }

    fn render(&self, e: &Element) -> String {
        match e {
            Element::Fraction(x, n) => format!("{}/{n}", self.inner.render(x)),
            other => other.to_string(),
        }
    }
}

/// Checks transitivity of the literal fraction relation. On finite sources
/// the relation is an equivalence exactly when `n*a = n*b` forces `a = b`,
/// and a failure gives the triple `(a, 1) ~ (n*a, n) ~ (b, 1)`.
fn literal_transitivity(x: &MonoidValue, hull: &Hull) -> Result<()> {
    let bound = x.bounds().search;
    if x.flags().is_torsion_free.is_true() {
        return Ok(());
    }
    if x.is_finite() {
        return match is_torsion_free(&**x, bound) {
            Decision::False(UniqueDivisionWitness::NotUnique { x1, x2, n }) => Err(Error::NotAnEquivalence {
                a: Element::fraction(x1.clone(), 1u32),
                b: Element::fraction(nsum(&**x, &x1, n)?, n),
                c: Element::fraction(x2, 1u32),
            }),
            _ => Ok(()),
        };
    }
    let sample = hull.sample(bound.min(3));
    for a in &sample {
        for b in &sample {
            if a == b || !hull.eq(a, b).is_equal() {
                continue;
            }
            for c in &sample {
                if hull.eq(b, c).is_equal() && hull.eq(a, c) == EqResult::NotEqual {
                    return Err(Error::NotAnEquivalence { a: a.clone(), b: b.clone(), c: c.clone() });
                }
            }
        }
    }
    Ok(())
}

/// Formal fractions `x / n`. Saturated mode relates `(x1, n1)` and
/// `(x2, n2)` when `s*n2*x1 = s*n1*x2` for some `s >= 1`; literal mode
/// requires `s = 1` and rejects sources where that is not transitive.
pub fn divisible_hull(x: &MonoidValue, mode: RelationMode) -> Result<(MonoidValue, CanonicalMap)> {
    let hull = Hull::new(x.clone(), mode);
    if mode == RelationMode::Literal {
        literal_transitivity(x, &hull)?;
    }
    let lazy = MonoidValue::new(hull);
    // over a finite source every (x, n) is related to some (y, 1)
    let seeds = x.enumerate().map(|all| all.into_iter().map(|e| Element::fraction(e, 1u32)).collect());
    finish(EmbeddingKind::D, x, lazy, seeds, |e| Ok(Element::fraction(e.clone(), BigUint::one())))
}
