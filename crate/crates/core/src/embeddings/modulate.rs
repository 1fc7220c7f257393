use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::element::write_combo;
use crate::monoid::{nsum, Backend, Bounds, Division, Monoid, MonoidValue};
use crate::predicates::{is_uniquely_divisible, render_ud};
use crate::{CategoryFlags, Decision, Element, EqResult, Error, Result, TriState};

use super::{finish, CanonicalMap, EmbeddingKind};

/// Formal combinations `sum q_k * x_k` with nonnegative rational `q_k`
/// over a uniquely divisible monoid. Two combinations are equal when they
/// evaluate to the same element, `q*x` being the `n`-th part of `m*x` for
/// `q = m/n`.
#[derive(Debug)]
pub struct Modulation {
    inner: MonoidValue,
    flags: CategoryFlags,
}

impl Modulation {
    pub fn new(inner: MonoidValue) -> Self {
        let x = inner.flags();
        let flags = CategoryFlags {
            is_cancellative: x.is_cancellative.only_true(),
            is_group: x.is_group.only_true(),
            is_divisible: TriState::True,
            is_torsion_free: TriState::True,
            is_cone: true,
            ..Default::default()
        }
        .normalized();
        Modulation { inner, flags }
    }

    fn terms<'a>(&self, e: &'a Element) -> Result<&'a [(BigRational, Element)]> {
        match e {
            Element::Combo(t) => Ok(t),
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name()))),
        }
    }

    /// The element of the underlying monoid a combination stands for.
    pub fn evaluate(&self, e: &Element) -> Result<Element> {
        let mut acc = self.inner.zero();
        for (q, x) in self.terms(e)? {
            acc = self.inner.add(&acc, &rational_part(&self.inner, x, q)?)?;
        }
        Ok(acc)
    }
}

/// `q*x` in a uniquely divisible monoid: the `n`-th part of `m*x`, `q = m/n`.
pub fn rational_part(x: &MonoidValue, e: &Element, q: &BigRational) -> Result<Element> {
    if q.is_negative() {
        return Err(Error::Domain(format!("negative scalar {q}")));
    }
    let too_large = || Error::Domain(format!("scalar {q} too large"));
    let m = q.numer().to_u64().ok_or_else(too_large)?;
    let n = q.denom().to_u64().ok_or_else(too_large)?;
    let multiple = nsum(&**x, e, m)?;
    match x.divide(&multiple, n) {
        Division::Part(y) => Ok(y),
        Division::Impossible => {
            Err(Error::NoRoot { monoid: x.name(), element: multiple, n })
        }
        Division::Unknown(bound) => Err(Error::BoundExhausted { left: multiple.clone(), right: multiple, bound }),
    }
}

impl Monoid for Modulation {
    fn name(&self) -> String {
        format!("M({})", self.inner.name())
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
        Element::Combo(Vec::new())
    }

    fn generators(&self) -> Vec<Element> {
        self.inner.generators().into_iter().map(|g| Element::combo([(BigRational::one(), g)])).collect()
    }

    fn contains(&self, e: &Element) -> bool {
        match e {
            Element::Combo(t) => {
                t.iter().all(|(q, x)| q.is_positive() && self.inner.contains(x))
                    && t.windows(2).all(|w| w[0].1 < w[1].1)
            }
            _ => false,
        }
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let (ta, tb) = (self.terms(a)?, self.terms(b)?);
        Ok(Element::combo(ta.iter().chain(tb).cloned()))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        if a == b {
            return EqResult::Equal;
        }
        if let (Some(x), Some(y)) = (self.rational_image(a), self.rational_image(b)) {
            if x != y {
                return EqResult::NotEqual;
            }
        }
        match (self.evaluate(a), self.evaluate(b)) {
            (Ok(x), Ok(y)) => self.inner.eq(&x, &y),
            (Err(Error::BoundExhausted { bound, .. }), _) | (_, Err(Error::BoundExhausted { bound, .. })) => {
                EqResult::Unknown(bound)
            }
            _ => EqResult::NotEqual,
        }
    }

    fn sample(&self, depth: usize) -> Vec<Element> {
        let scalars = [BigRational::new(1.into(), 2.into()), BigRational::one(), BigRational::from_integer(2.into())];
        let mut out = vec![self.zero()];
        for x in self.inner.sample(depth) {
            for q in &scalars {
                out.push(Element::combo([(q.clone(), x.clone())]));
            }
        }
        out
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        let mut terms = Vec::new();
        for (q, x) in self.terms(e)? {
            terms.push((q.clone(), self.inner.negate(x)?));
        }
        Ok(Element::combo(terms))
    }

    fn divide(&self, e: &Element, n: u64) -> Division {
        if n == 0 {
            return Division::Impossible;
        }
        match self.scale(&BigRational::new(1.into(), n.into()), e) {
            Ok(p) => Division::Part(p),
            Err(_) => Division::Impossible,
        }
    }

    /// `a * sum q_k x_k = sum (a q_k) x_k`.
    fn scale(&self, a: &BigRational, e: &Element) -> Result<Element> {
        if a.is_negative() {
            return Err(Error::Domain(format!("negative scalar {a}")));
        }
        let terms = self.terms(e)?;
        Ok(Element::combo(terms.iter().map(|(q, x)| (q * a, x.clone()))))
    }

    fn rational_image(&self, e: &Element) -> Option<Vec<BigRational>> {
        let mut acc: Option<Vec<BigRational>> = None;
        for (q, x) in self.terms(e).ok()? {
            let v: Vec<BigRational> = self.inner.rational_image(x)?.into_iter().map(|c| c * q).collect();
            acc = Some(match acc {
                None => v,
                Some(a) => a.into_iter().zip(v).map(|(s, t)| s + t).collect(),
            });
        }
        match acc {
            Some(v) => Some(v),
            None => self.inner.rational_image(&self.inner.zero()),
        }
    }

    fn render(&self, e: &Element) -> String {
        match e {
            Element::Combo(t) => {
                let mut s = String::new();
                write_combo(&mut s, t, |x| self.inner.render(x)).expect("write to string");
                s
            }
            other => other.to_string(),
        }
    }
}

/// Formal nonnegative rational combinations over a uniquely divisible
/// monoid, with the map `x -> 1*x`.
pub fn modulate(x: &MonoidValue) -> Result<(MonoidValue, CanonicalMap)> {
    match is_uniquely_divisible(&**x, x.bounds().search) {
        Decision::True => {}
        Decision::False(w) => return Err(Error::ModulationUndefined(render_ud(&**x, &w))),
        Decision::Unknown(b) => {
            return Err(Error::ModulationUndefined(format!(
                "unique divisibility of {} undecided within bound {b}",
                x.name()
            )))
        }
    }
    let lazy = MonoidValue::new(Modulation::new(x.clone()));
    finish(EmbeddingKind::M, x, lazy, None, |e| Ok(Element::combo([(BigRational::one(), e.clone())])))
}

/// `q * e` in a cone.
pub fn scalar_mul(c: &MonoidValue, q: &BigRational, e: &Element) -> Result<Element> {
    if !c.contains(e) {
        return Err(Error::Domain(format!("{e} is not an element of {}", c.name())));
    }
    if q.is_zero() {
        return Ok(c.zero());
    }
    c.scale(q, e)
}

/// Brackets `gamma * e` for a real `gamma` in `[lo, hi]` by `(lo*e, hi*e)`.
pub fn cut_scalar_mul(c: &MonoidValue, lo: &BigRational, hi: &BigRational, e: &Element) -> Result<(Element, Element)> {
    if lo > hi {
        return Err(Error::Domain(format!("empty bracket [{lo}, {hi}]")));
    }
    if lo.is_negative() {
        return Err(Error::Domain(format!("negative bracket [{lo}, {hi}]")));
    }
    Ok((scalar_mul(c, lo, e)?, scalar_mul(c, hi, e)?))
}
