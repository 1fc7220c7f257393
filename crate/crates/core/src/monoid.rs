//! The computable commutative monoid abstraction.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;

use crate::{CategoryFlags, Element, EqResult, Error, Result};

/// Which family of implementation backs a monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Cayley,
    Affine,
    FinitelyPresented,
    Derived,
}

/// Search budgets shared by a monoid and everything constructed from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    /// Bound for existential searches (multipliers, witnesses, roots).
    pub search: usize,
    /// Number of rewrite states a word-problem search may visit.
    pub rewrite_states: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { search: 64, rewrite_states: 10_000 }
    }
}

/// Depth at which sampled (non-exhaustive) searches stop growing. Keeping
/// the effective depth constant past this point keeps bounded answers
/// stable as the bound increases.
pub const SAMPLE_DEPTH: usize = 8;

/// Result of looking for an `n`-th part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Part(Element),
    Impossible,
    Unknown(usize),
}

/// A commutative monoid with decidable (possibly bounded) equality.
///
/// Enumerable monoids must keep their elements canonical: two elements of
/// an enumerable monoid are equal exactly when they are syntactically equal.
pub trait Monoid: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn backend(&self) -> Backend;

    fn bounds(&self) -> Bounds;

    fn flags(&self) -> CategoryFlags;

    fn zero(&self) -> Element;

    fn generators(&self) -> Vec<Element>;

    fn contains(&self, e: &Element) -> bool;

    fn add(&self, a: &Element, b: &Element) -> Result<Element>;

    fn eq(&self, a: &Element, b: &Element) -> EqResult;

    /// Every element, canonical and sorted, when the carrier is finite.
    fn enumerate(&self) -> Option<Vec<Element>> {
        None
    }

    /// A deterministic finite sample that grows with `depth` and never
    /// loses elements as `depth` increases.
    fn sample(&self, depth: usize) -> Vec<Element>;

    /// Decides `exists t: t + a = t + b`.
    fn cancel_eq(&self, a: &Element, b: &Element) -> EqResult {
        default_cancel_eq(self, a, b)
    }

    /// Decides `exists n >= 1: n*a = n*b`.
    fn torsion_eq(&self, a: &Element, b: &Element) -> EqResult {
        default_torsion_eq(self, a, b)
    }

    fn negate(&self, _e: &Element) -> Result<Element> {
        Err(Error::NotAGroup(self.name()))
    }

    fn divide(&self, e: &Element, n: u64) -> Division {
        default_divide(self, e, n)
    }

    fn scale(&self, _q: &BigRational, _e: &Element) -> Result<Element> {
        Err(Error::NotACone(self.name()))
    }

    /// An additive map into `Q^k`, when one is known. Elements with
    /// different images are never related by equality, the cancellation
    /// relation or the torsion relation.
    fn rational_image(&self, _e: &Element) -> Option<Vec<BigRational>> {
        None
    }

    /// Whether [`Monoid::rational_image`] separates exactly the pairs whose
    /// difference is torsion in the Grothendieck group.
    fn image_detects_torsion(&self) -> bool {
        false
    }

    /// The underlying formal representative of an element (materialized
    /// quotients expose the least member of the class).
    fn representative(&self, e: &Element) -> Element {
        e.clone()
    }

    /// Human-readable form, e.g. table labels instead of row indices.
    fn render(&self, e: &Element) -> String {
        e.to_string()
    }

    /// Structure of the Grothendieck group, when finitely computable.
    fn grothendieck(&self) -> Option<crate::AbelianGroupStructure> {
        None
    }

    /// Power data of the maps `x -> n*x`; finite carriers only.
    fn powers(&self) -> Option<PowerProfile> {
        power_profile(self)
    }
}

/// Shared handle to a monoid.
#[derive(Clone)]
pub struct MonoidValue(Arc<dyn Monoid>);

impl MonoidValue {
    pub fn new<M: Monoid + 'static>(m: M) -> Self {
        MonoidValue(Arc::new(m))
    }

    pub fn from_arc(inner: Arc<dyn Monoid>) -> Self {
        MonoidValue(inner)
    }

    pub fn is_finite(&self) -> bool {
        self.0.enumerate().is_some()
    }

    pub fn cardinality(&self) -> Option<usize> {
        self.0.enumerate().map(|v| v.len())
    }

    pub fn ptr_eq(&self, other: &MonoidValue) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Deref for MonoidValue {
    type Target = dyn Monoid;

    fn deref(&self) -> &Self::Target {
        &*self.0
    }
}

impl fmt::Debug for MonoidValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidValue({})", self.0.name())
    }
}

/// Index and period data for the power maps `x -> n*x` of a finite monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerProfile {
    /// Largest pre-period over all elements.
    pub index: u64,
    /// Least common multiple of all periods.
    pub period: u64,
}

impl PowerProfile {
    /// Least multiple of the period that is at least the index; `w*x` is
    /// idempotent for every `x`.
    pub fn idempotent_exponent(&self) -> u64 {
        let k = self.index.div_ceil(self.period).max(1);
        k * self.period
    }

    /// Every power map `x -> n*x`, `n >= 1`, equals one with `n` in this range.
    pub fn distinct_multipliers(&self) -> std::ops::RangeInclusive<u64> {
        1..=(self.index + self.period).max(1)
    }
}

/// Computes the power profile by walking `x, 2x, 3x, ...` until it cycles.
pub fn power_profile<M: Monoid + ?Sized>(m: &M) -> Option<PowerProfile> {
    let all = m.enumerate()?;
    let mut index = 1u64;
    let mut period = 1u64;
    for x in &all {
        let mut seen: HashMap<Element, u64> = HashMap::new();
        let mut cur = x.clone();
        let mut k = 1u64;
        loop {
            if let Some(&first) = seen.get(&cur) {
                index = index.max(first);
                period = period.lcm(&(k - first));
                break;
            }
            seen.insert(cur.clone(), k);
            cur = m.add(&cur, x).ok()?;
            k += 1;
        }
    }
    Some(PowerProfile { index, period })
}

/// `n`-fold sum by binary doubling. `nsum(x, 0) = 0`.
pub fn nsum<M: Monoid + ?Sized>(m: &M, x: &Element, n: u64) -> Result<Element> {
    if !m.contains(x) {
        return Err(Error::Domain(format!("{} is not an element of {}", x, m.name())));
    }
    let mut acc = m.zero();
    let mut base = x.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = m.add(&acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = m.add(&base, &base)?;
        }
    }
    Ok(acc)
}

fn images_differ<M: Monoid + ?Sized>(m: &M, a: &Element, b: &Element) -> bool {
    match (m.rational_image(a), m.rational_image(b)) {
        (Some(x), Some(y)) => x != y,
        _ => false,
    }
}

pub(crate) fn default_cancel_eq<M: Monoid + ?Sized>(m: &M, a: &Element, b: &Element) -> EqResult {
    let direct = m.eq(a, b);
    if direct.is_equal() || m.flags().is_cancellative.is_true() {
        return direct;
    }
    if images_differ(m, a, b) {
        return EqResult::NotEqual;
    }
    if let Some(all) = m.enumerate() {
        let mut unknown = None;
        for t in &all {
            let (Ok(ta), Ok(tb)) = (m.add(t, a), m.add(t, b)) else { continue };
            match m.eq(&ta, &tb) {
                EqResult::Equal => return EqResult::Equal,
                EqResult::Unknown(k) => unknown = Some(k),
                EqResult::NotEqual => {}
            }
        }
        return unknown.map_or(EqResult::NotEqual, EqResult::Unknown);
    }
    let bound = m.bounds().search;
    let mut candidates = m.sample(bound.min(SAMPLE_DEPTH));
    if let Ok(s) = m.add(a, b) {
        candidates.push(s);
    }
    for t in &candidates {
        let (Ok(ta), Ok(tb)) = (m.add(t, a), m.add(t, b)) else { continue };
        if m.eq(&ta, &tb).is_equal() {
            return EqResult::Equal;
        }
    }
    EqResult::Unknown(bound)
}

pub(crate) fn default_torsion_eq<M: Monoid + ?Sized>(m: &M, a: &Element, b: &Element) -> EqResult {
    let direct = m.eq(a, b);
    if direct.is_equal() || m.flags().is_torsion_free.is_true() {
        return direct;
    }
    if images_differ(m, a, b) {
        return EqResult::NotEqual;
    }
    if let Some(profile) = m.powers() {
        let w = profile.idempotent_exponent();
        return match (nsum(m, a, w), nsum(m, b, w)) {
            (Ok(x), Ok(y)) => m.eq(&x, &y),
            _ => EqResult::Unknown(0),
        };
    }
    let bound = m.bounds().search;
    let (mut na, mut nb) = (a.clone(), b.clone());
    for _ in 2..=bound.max(2) {
        let (Ok(x), Ok(y)) = (m.add(&na, a), m.add(&nb, b)) else { break };
        na = x;
        nb = y;
        if m.eq(&na, &nb).is_equal() {
            return EqResult::Equal;
        }
    }
    EqResult::Unknown(bound)
}

fn default_divide<M: Monoid + ?Sized>(m: &M, e: &Element, n: u64) -> Division {
    if n == 1 {
        return Division::Part(e.clone());
    }
    match m.enumerate() {
        Some(all) => {
            for y in &all {
                if let Ok(s) = nsum(m, y, n) {
                    if m.eq(&s, e).is_equal() {
                        return Division::Part(y.clone());
                    }
                }
            }
            Division::Impossible
        }
        None => Division::Unknown(m.bounds().search),
    }
}
