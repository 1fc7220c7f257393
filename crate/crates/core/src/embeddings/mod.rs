//! The five constructions and their canonical maps.
//!
//! Every construction returns the target monoid together with the
//! [`CanonicalMap`] from its source. Finite sources produce finite
//! (materialized) targets with one canonical element per class; infinite
//! sources produce lazy targets that decide equality through the relation.

mod difference;
mod hull;
mod materialize;
mod modulate;
mod quotient;
pub mod theorems;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::monoid::{MonoidValue, SAMPLE_DEPTH};
use crate::{Decision, Element, EqResult, Error, Result, TriState};

pub use difference::{formal_difference, negate, Difference};
pub use hull::{divisible_hull, Hull};
pub use materialize::Materialized;
pub use modulate::{cut_scalar_mul, modulate, rational_part, scalar_mul, Modulation};
pub use quotient::{regularize, unique_quotient, Congruence, Quotient};

/// The five constructions, in the order used to sort paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EmbeddingKind {
    R,
    F,
    D,
    U,
    M,
}

impl EmbeddingKind {
    pub const ALL: [EmbeddingKind; 5] =
        [EmbeddingKind::R, EmbeddingKind::F, EmbeddingKind::D, EmbeddingKind::U, EmbeddingKind::M];

    pub fn letter(self) -> char {
        match self {
            EmbeddingKind::R => 'R',
            EmbeddingKind::F => 'F',
            EmbeddingKind::D => 'D',
            EmbeddingKind::U => 'U',
            EmbeddingKind::M => 'M',
        }
    }
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for EmbeddingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EmbeddingKind::ALL
            .into_iter()
            .find(|k| s.trim().eq_ignore_ascii_case(&k.letter().to_string()))
            .ok_or_else(|| Error::Domain(format!("unknown embedding `{s}` (expected R, F, D, U or M)")))
    }
}

/// Whether the difference and fraction relations are used as written or
/// closed under an extra witness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RelationMode {
    /// `(y1, z1) ~ (y2, z2)` iff `y1 + z2 = y2 + z1`; `(x1, n1) ~ (x2, n2)`
    /// iff `n2*x1 = n1*x2`.
    Literal,
    /// The same relations up to an added `t` (differences) or a common
    /// multiplier `s` (fractions).
    #[default]
    Saturated,
}

impl fmt::Display for RelationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationMode::Literal => write!(f, "literal"),
            RelationMode::Saturated => write!(f, "saturated"),
        }
    }
}

impl FromStr for RelationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(RelationMode::Literal),
            "saturated" => Ok(RelationMode::Saturated),
            other => Err(Error::Domain(format!("unknown mode `{other}` (expected literal or saturated)"))),
        }
    }
}

type MapFn = Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync>;

/// The map from a source monoid into a constructed target.
#[derive(Clone)]
pub struct CanonicalMap {
    source: MonoidValue,
    target: MonoidValue,
    kinds: Vec<EmbeddingKind>,
    apply: MapFn,
}

impl CanonicalMap {
    pub fn new(
        source: MonoidValue,
        target: MonoidValue,
        kind: EmbeddingKind,
        apply: impl Fn(&Element) -> Result<Element> + Send + Sync + 'static,
    ) -> Self {
        CanonicalMap { source, target, kinds: vec![kind], apply: Arc::new(apply) }
    }

    pub fn identity(x: MonoidValue) -> Self {
        CanonicalMap { source: x.clone(), target: x, kinds: Vec::new(), apply: Arc::new(|e| Ok(e.clone())) }
    }

    pub fn source(&self) -> &MonoidValue {
        &self.source
    }

    pub fn target(&self) -> &MonoidValue {
        &self.target
    }

    pub fn kinds(&self) -> &[EmbeddingKind] {
        &self.kinds
    }

    /// Letters of the composed constructions, e.g. `R,F,D`.
    pub fn name(&self) -> String {
        let letters: Vec<String> = self.kinds.iter().map(ToString::to_string).collect();
        if letters.is_empty() {
            "id".into()
        } else {
            letters.join(",")
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !self.source.contains(x) {
            return Err(Error::Domain(format!("{x} is not an element of {}", self.source.name())));
        }
        (self.apply)(x)
    }

    /// `next . self`.
    pub fn then(&self, next: &CanonicalMap) -> CanonicalMap {
        let (first, second) = (self.apply.clone(), next.apply.clone());
        let mut kinds = self.kinds.clone();
        kinds.extend_from_slice(&next.kinds);
        CanonicalMap {
            source: self.source.clone(),
            target: next.target.clone(),
            kinds,
            apply: Arc::new(move |e| second(&first(e)?)),
        }
    }

    /// Checks `f(0) = 0` and `f(a + b) = f(a) + f(b)` on the given pairs.
    pub fn check_homomorphism(&self, pairs: &[(Element, Element)]) -> HomomorphismCheck {
        let t = &self.target;
        let zero = match self.apply(&self.source.zero()) {
            Ok(z) => t.eq(&z, &t.zero()),
            Err(_) => EqResult::NotEqual,
        };
        let mut unknown = 0;
        for (a, b) in pairs {
            let verdict = (|| -> Result<EqResult> {
                let lhs = self.apply(&self.source.add(a, b)?)?;
                let rhs = t.add(&self.apply(a)?, &self.apply(b)?)?;
                Ok(t.eq(&lhs, &rhs))
            })();
            match verdict {
                Ok(EqResult::Equal) => {}
                Ok(EqResult::Unknown(_)) => unknown += 1,
                Ok(EqResult::NotEqual) | Err(_) => {
                    return HomomorphismCheck { zero, failure: Some((a.clone(), b.clone())), unknown, checked: pairs.len() }
                }
            }
        }
        HomomorphismCheck { zero, failure: None, unknown, checked: pairs.len() }
    }

    /// Looks for `a != b` with `f(a) = f(b)` among the given pairs.
    pub fn check_injective(&self, pairs: &[(Element, Element)]) -> Decision<(Element, Element)> {
        let mut unknown = None;
        for (a, b) in pairs {
            match self.source.eq(a, b) {
                EqResult::Equal => continue,
                EqResult::Unknown(k) => {
                    unknown = Some(k);
                    continue;
                }
                EqResult::NotEqual => {}
            }
            let (Ok(fa), Ok(fb)) = (self.apply(a), self.apply(b)) else { continue };
            match self.target.eq(&fa, &fb) {
                EqResult::Equal => return Decision::False((a.clone(), b.clone())),
                EqResult::Unknown(k) => unknown = Some(k),
                EqResult::NotEqual => {}
            }
        }
        unknown.map_or(Decision::True, Decision::Unknown)
    }

    /// On a finite target, finds an element outside the image of the
    /// source elements given.
    pub fn check_surjective(&self, source_elements: &[Element]) -> Decision<Element> {
        let Some(all) = self.target.enumerate() else {
            return Decision::Unknown(self.target.bounds().search);
        };
        let image: Vec<Element> = source_elements.iter().filter_map(|x| self.apply(x).ok()).collect();
        for e in all {
            if !image.iter().any(|y| self.target.eq(y, &e).is_equal()) {
                return Decision::False(e);
            }
        }
        Decision::True
    }
}

impl fmt::Debug for CanonicalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalMap({}: {} -> {})", self.name(), self.source.name(), self.target.name())
    }
}

/// Outcome of [`CanonicalMap::check_homomorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismCheck {
    pub zero: EqResult,
    pub failure: Option<(Element, Element)>,
    pub unknown: usize,
    pub checked: usize,
}

impl HomomorphismCheck {
    pub fn verdict(&self) -> TriState {
        if self.failure.is_some() || self.zero == EqResult::NotEqual {
            TriState::False
        } else if self.unknown > 0 || self.zero.is_unknown() {
            TriState::Unknown(self.unknown)
        } else {
            TriState::True
        }
    }
}

/// Elements to check a property on: everything when finite, otherwise the
/// sample at [`SAMPLE_DEPTH`].
pub fn check_elements(m: &MonoidValue) -> Vec<Element> {
    m.enumerate().unwrap_or_else(|| m.sample(SAMPLE_DEPTH))
}

/// All ordered pairs of a finite monoid, or `budget` pairs drawn from the
/// sample with a seeded generator.
pub fn sample_pairs(m: &MonoidValue, budget: usize, seed: u64) -> Vec<(Element, Element)> {
    if let Some(all) = m.enumerate() {
        return all.iter().flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone()))).collect();
    }
    let elems = m.sample(SAMPLE_DEPTH);
    let mut pairs: Vec<(Element, Element)> =
        elems.iter().flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone()))).collect();
    if pairs.len() > budget {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(budget);
    }
    pairs
}

/// Wraps a lazily defined target: materializes it over `seeds` when given.
pub(crate) fn finish(
    kind: EmbeddingKind,
    source: &MonoidValue,
    lazy: MonoidValue,
    seeds: Option<Vec<Element>>,
    formal: impl Fn(&Element) -> Result<Element> + Send + Sync + 'static,
) -> Result<(MonoidValue, CanonicalMap)> {
    match seeds {
        None => {
            let map = CanonicalMap::new(source.clone(), lazy.clone(), kind, formal);
            Ok((lazy, map))
        }
        Some(seeds) => {
            let mat = Arc::new(Materialized::build(lazy, seeds)?);
            let target = MonoidValue::from_arc(mat.clone());
            let map = CanonicalMap::new(source.clone(), target.clone(), kind, move |x| mat.class_of(&formal(x)?));
            Ok((target, map))
        }
    }
}
