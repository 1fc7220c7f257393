use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::lattice::AbelianGroupStructure;
use crate::monoid::{Backend, Bounds, Division, Monoid, MonoidValue};
use crate::{CategoryFlags, Decision, Element, EqResult, Error, Result, TriState};

use super::{finish, CanonicalMap, EmbeddingKind};

type RelationFn = Arc<dyn Fn(&Element, &Element) -> EqResult + Send + Sync>;

/// A relation on a carrier, partitioned into classes when the carrier is
/// enumerable.
#[derive(Clone)]
pub struct Congruence {
    carrier: MonoidValue,
    relation: RelationFn,
    classes: Option<Vec<Vec<Element>>>,
}

impl Congruence {
    pub fn new(carrier: MonoidValue, relation: impl Fn(&Element, &Element) -> EqResult + Send + Sync + 'static) -> Self {
        Congruence { carrier, relation: Arc::new(relation), classes: None }
    }

    pub fn carrier(&self) -> &MonoidValue {
        &self.carrier
    }

    pub fn decide(&self, a: &Element, b: &Element) -> EqResult {
        (self.relation)(a, b)
    }

    /// Union-find over `seeds`. Classes are sorted by their least member,
    /// members sorted within each class. Undecided pairs are an error.
    pub fn partition(mut self, mut seeds: Vec<Element>) -> Result<Self> {
        seeds.sort();
        seeds.dedup();
        let n = seeds.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri == rj {
                    continue;
                }
                match self.decide(&seeds[i], &seeds[j]) {
                    EqResult::Equal => parent[rj.max(ri)] = ri.min(rj),
                    EqResult::NotEqual => {}
                    EqResult::Unknown(bound) => {
                        return Err(Error::BoundExhausted { left: seeds[i].clone(), right: seeds[j].clone(), bound })
                    }
                }
            }
        }
        let mut classes: Vec<Vec<Element>> = Vec::new();
        let mut slot: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            let c = *slot[root].get_or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(seeds[i].clone());
        }
        self.classes = Some(classes);
        Ok(self)
    }

    pub fn classes(&self) -> Option<&[Vec<Element>]> {
        self.classes.as_deref()
    }

    /// Looks for `a ~ b` with `a + c` not related to `b + c`.
    pub fn check_compatible(&self, elements: &[Element]) -> Decision<(Element, Element, Element)> {
        let mut unknown = None;
        for (i, a) in elements.iter().enumerate() {
            for b in &elements[i + 1..] {
                if !self.decide(a, b).is_equal() {
                    continue;
                }
                for c in elements {
                    let (Ok(ac), Ok(bc)) = (self.carrier.add(a, c), self.carrier.add(b, c)) else { continue };
                    match self.decide(&ac, &bc) {
                        EqResult::NotEqual => return Decision::False((a.clone(), b.clone(), c.clone())),
                        EqResult::Unknown(k) => unknown = Some(k),
                        EqResult::Equal => {}
                    }
                }
            }
        }
        unknown.map_or(Decision::True, Decision::Unknown)
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Congruence")
            .field("carrier", &self.carrier)
            .field("classes", &self.classes.as_ref().map(Vec::len))
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    /// `exists t: t + a = t + b`
    Cancel,
    /// `exists n >= 1: n*a = n*b`
    Torsion,
}

/// `X` modulo the cancellation or torsion relation, on the elements of `X`.
#[derive(Debug)]
pub struct Quotient {
    inner: MonoidValue,
    relation: Relation,
    flags: CategoryFlags,
}

impl Quotient {
    fn new(inner: MonoidValue, relation: Relation) -> Self {
        let x = inner.flags();
        // the relation is trivial when X already has the property
        let trivial = match relation {
            Relation::Cancel => x.is_cancellative.is_true(),
            Relation::Torsion => x.is_torsion_free.is_true(),
        };
        let flags = if trivial {
            x
        } else {
            let mut f = CategoryFlags {
                is_cancellative: x.is_cancellative.only_true(),
                is_group: x.is_group.only_true(),
                is_divisible: x.is_divisible.only_true(),
                is_cone: x.is_cone,
                ..Default::default()
            };
            match relation {
                Relation::Cancel => f.is_cancellative = TriState::True,
                Relation::Torsion => f.is_torsion_free = TriState::True,
            }
            f.normalized()
        };
        Quotient { inner, relation, flags }
    }

    fn exact_on_inner(&self) -> bool {
        match self.relation {
            Relation::Cancel => self.inner.flags().is_cancellative.is_true(),
            Relation::Torsion => self.inner.flags().is_torsion_free.is_true(),
        }
    }
}

impl Monoid for Quotient {
    fn name(&self) -> String {
        let letter = match self.relation {
            Relation::Cancel => 'R',
            Relation::Torsion => 'U',
        };
        format!("{letter}({})", self.inner.name())
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
        self.inner.zero()
    }

    fn generators(&self) -> Vec<Element> {
        self.inner.generators()
    }

    fn contains(&self, e: &Element) -> bool {
        self.inner.contains(e)
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.inner.add(a, b)
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        match self.relation {
            Relation::Cancel => self.inner.cancel_eq(a, b),
            Relation::Torsion => self.inner.torsion_eq(a, b),
        }
    }

    fn sample(&self, depth: usize) -> Vec<Element> {
        self.inner.sample(depth)
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        self.inner.negate(e)
    }

    /// A part in `X` is a part here; the converse fails only when the
    /// relation is not equality.
    fn divide(&self, e: &Element, n: u64) -> Division {
        match self.inner.divide(e, n) {
            Division::Impossible if !self.exact_on_inner() => Division::Unknown(self.bounds().search),
            other => other,
        }
    }

    fn scale(&self, q: &BigRational, e: &Element) -> Result<Element> {
        self.inner.scale(q, e)
    }

    fn rational_image(&self, e: &Element) -> Option<Vec<BigRational>> {
        self.inner.rational_image(e)
    }

    fn image_detects_torsion(&self) -> bool {
        self.relation == Relation::Cancel && self.inner.image_detects_torsion()
    }

    fn render(&self, e: &Element) -> String {
        self.inner.render(e)
    }

    fn grothendieck(&self) -> Option<AbelianGroupStructure> {
        let g = self.inner.grothendieck()?;
        Some(match self.relation {
            Relation::Cancel => g,
            Relation::Torsion => AbelianGroupStructure::free(g.rank),
        })
    }
}

fn quotient_by(x: &MonoidValue, relation: Relation, kind: EmbeddingKind) -> Result<(MonoidValue, CanonicalMap)> {
    let lazy = MonoidValue::new(Quotient::new(x.clone(), relation));
    finish(kind, x, lazy, x.enumerate(), |e| Ok(e.clone()))
}

/// The quotient by `y1 ~ y2 iff exists t: t + y1 = t + y2`, the largest
/// cancellative quotient.
pub fn regularize(x: &MonoidValue) -> Result<(MonoidValue, CanonicalMap)> {
    quotient_by(x, Relation::Cancel, EmbeddingKind::R)
}

/// The quotient by `x1 ~ x2 iff exists n >= 1: n*x1 = n*x2`.
pub fn unique_quotient(x: &MonoidValue) -> Result<(MonoidValue, CanonicalMap)> {
    quotient_by(x, Relation::Torsion, EmbeddingKind::U)
}
