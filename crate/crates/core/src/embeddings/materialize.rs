use std::sync::OnceLock;

use num_rational::BigRational;

use crate::lattice::{grothendieck_of_table, AbelianGroupStructure};
use crate::monoid::{power_profile, Backend, Bounds, Monoid, MonoidValue, PowerProfile};
use crate::predicates::exhaustive_flags;
use crate::{CategoryFlags, Element, EqResult, Error, Result};

use super::quotient::Congruence;

/// A finite quotient of a lazily defined monoid, with one class per
/// equivalence class of the seeds. Classes are numbered by their least
/// member, which is kept as the representative.
#[derive(Debug)]
pub struct Materialized {
    inner: MonoidValue,
    reps: Vec<Element>,
    table: Vec<Vec<usize>>,
    zero: usize,
    generators: Vec<usize>,
    flags: OnceLock<CategoryFlags>,
    powers: OnceLock<Option<PowerProfile>>,
}

impl Materialized {
    /// Partitions `seeds` by the equality of `inner` and tabulates addition.
    /// The seeds must meet every class.
    pub fn build(inner: MonoidValue, seeds: Vec<Element>) -> Result<Self> {
        let eq_inner = inner.clone();
        let congruence = Congruence::new(inner.clone(), move |a, b| eq_inner.eq(a, b)).partition(seeds)?;
        let reps: Vec<Element> =
            congruence.classes().unwrap_or_default().iter().map(|c| c[0].clone()).collect();
        let mut m = Materialized {
            inner,
            reps,
            table: Vec::new(),
            zero: 0,
            generators: Vec::new(),
            flags: OnceLock::new(),
            powers: OnceLock::new(),
        };
        let k = m.reps.len();
        let mut table = vec![vec![0; k]; k];
        for i in 0..k {
            for j in i..k {
                let s = m.inner.add(&m.reps[i], &m.reps[j])?;
                let c = m.locate(&s)?;
                table[i][j] = c;
                table[j][i] = c;
            }
        }
        m.table = table;
        m.zero = m.locate(&m.inner.zero())?;
        let mut gens = Vec::new();
        for g in m.inner.generators() {
            let c = m.locate(&g)?;
            if c != m.zero && !gens.contains(&c) {
                gens.push(c);
            }
        }
        gens.sort_unstable();
        m.generators = gens;
        Ok(m)
    }

    pub fn inner(&self) -> &MonoidValue {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    fn locate(&self, formal: &Element) -> Result<usize> {
        for (i, r) in self.reps.iter().enumerate() {
            match self.inner.eq(formal, r) {
                EqResult::Equal => return Ok(i),
                EqResult::NotEqual => {}
                EqResult::Unknown(bound) => {
                    return Err(Error::BoundExhausted { left: formal.clone(), right: r.clone(), bound })
                }
            }
        }
        Err(Error::Domain(format!("{formal} lies outside the classes of {}", self.inner.name())))
    }

    /// The class of an element of the underlying lazy monoid.
    pub fn class_of(&self, formal: &Element) -> Result<Element> {
        self.locate(formal).map(Element::Class)
    }

    fn index(&self, e: &Element) -> Result<usize> {
        match e {
            Element::Class(i) if *i < self.size() => Ok(*i),
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name()))),
        }
    }
}

impl Monoid for Materialized {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn backend(&self) -> Backend {
        Backend::Derived
    }

    fn bounds(&self) -> Bounds {
        self.inner.bounds()
    }

    fn flags(&self) -> CategoryFlags {
        *self.flags.get_or_init(|| exhaustive_flags(self, CategoryFlags::default()))
    }

    fn zero(&self) -> Element {
        Element::Class(self.zero)
    }

    fn generators(&self) -> Vec<Element> {
        self.generators.iter().map(|&i| Element::Class(i)).collect()
    }

    fn contains(&self, e: &Element) -> bool {
        matches!(e, Element::Class(i) if *i < self.size())
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Element::Class(self.table[self.index(a)?][self.index(b)?]))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        EqResult::from_bool(a == b)
    }

    fn enumerate(&self) -> Option<Vec<Element>> {
        Some((0..self.size()).map(Element::Class).collect())
    }

    fn sample(&self, _depth: usize) -> Vec<Element> {
        (0..self.size()).map(Element::Class).collect()
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        let a = self.index(e)?;
        (0..self.size())
            .find(|&b| self.table[a][b] == self.zero)
            .map(Element::Class)
            .ok_or_else(|| Error::NotAGroup(format!("{} (no negative of {})", self.name(), self.render(e))))
    }

    fn rational_image(&self, _e: &Element) -> Option<Vec<BigRational>> {
        Some(Vec::new())
    }

    fn image_detects_torsion(&self) -> bool {
        true
    }

    fn representative(&self, e: &Element) -> Element {
        match e {
            Element::Class(i) if *i < self.size() => self.reps[*i].clone(),
            other => other.clone(),
        }
    }

    fn render(&self, e: &Element) -> String {
        match e {
            Element::Class(i) if *i < self.size() => format!("[{}]", self.inner.render(&self.reps[*i])),
            other => other.to_string(),
        }
    }

    fn grothendieck(&self) -> Option<AbelianGroupStructure> {
        Some(grothendieck_of_table(&self.table))
    }

    fn powers(&self) -> Option<PowerProfile> {
        *self.powers.get_or_init(|| power_profile(self))
    }
}
