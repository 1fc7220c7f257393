use std::sync::OnceLock;

use num_rational::BigRational;

use crate::lattice::{grothendieck_of_table, AbelianGroupStructure};
use crate::monoid::{power_profile, Backend, Bounds, Monoid, PowerProfile};
use crate::predicates::exhaustive_flags;
use crate::{CategoryFlags, Element, EqResult, Error, Result};

/// A finite commutative monoid given by its addition table. Element `0` is
/// the zero.
#[derive(Debug)]
pub struct Cayley {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    generators: Option<Vec<usize>>,
    bounds: Bounds,
    flags: OnceLock<CategoryFlags>,
    powers: OnceLock<Option<PowerProfile>>,
}

impl Cayley {
    /// Validates the table exhaustively: closure, neutrality of element 0,
    /// commutativity and associativity.
    pub fn new(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Presentation("empty element list".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Presentation(format!("addition table must be {n}x{n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::Presentation(format!("table entry {bad} out of range")));
        }
        let label = |i: usize| labels[i].clone();
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::AxiomViolation {
                    law: "neutrality",
                    witness: [label(0), label(a), label(table[0][a])],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(Error::AxiomViolation {
                        law: "commutativity",
                        witness: [label(a), label(b), label(table[a][b])],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::AxiomViolation {
                            law: "associativity",
                            witness: [label(a), label(b), label(c)],
                        });
                    }
                }
            }
        }
        Ok(Cayley {
            name: name.into(),
            labels,
            table,
            generators: None,
            bounds: Bounds::default(),
            flags: OnceLock::new(),
            powers: OnceLock::new(),
        })
    }

    /// Builds a table from a closed operation on `0..n`.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let table = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Cayley::new(name, labels, table)
    }

    pub fn with_generators(mut self, gens: Vec<usize>) -> Self {
        self.generators = Some(gens);
        self
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    fn index(&self, e: &Element) -> Result<usize> {
        match e {
            Element::Index(i) if *i < self.size() => Ok(*i),
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name))),
        }
    }
}

impl Monoid for Cayley {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn backend(&self) -> Backend {
        Backend::Cayley
    }

    fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn flags(&self) -> CategoryFlags {
        *self.flags.get_or_init(|| exhaustive_flags(self, CategoryFlags::default()))
    }

    fn zero(&self) -> Element {
        Element::Index(0)
    }

    fn generators(&self) -> Vec<Element> {
        match &self.generators {
            Some(g) => g.iter().map(|&i| Element::Index(i)).collect(),
            None => (1..self.size()).map(Element::Index).collect(),
        }
    }

    fn contains(&self, e: &Element) -> bool {
        matches!(e, Element::Index(i) if *i < self.size())
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Element::Index(self.table[self.index(a)?][self.index(b)?]))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        EqResult::from_bool(a == b)
    }

    fn enumerate(&self) -> Option<Vec<Element>> {
        Some((0..self.size()).map(Element::Index).collect())
    }

    fn sample(&self, _depth: usize) -> Vec<Element> {
        (0..self.size()).map(Element::Index).collect()
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        let a = self.index(e)?;
        (0..self.size())
            .find(|&b| self.table[a][b] == 0)
            .map(Element::Index)
            .ok_or_else(|| Error::NotAGroup(format!("{} (no inverse of {})", self.name, self.labels[a])))
    }

    fn rational_image(&self, _e: &Element) -> Option<Vec<BigRational>> {
        Some(Vec::new())
    }

    fn image_detects_torsion(&self) -> bool {
        true
    }

    fn render(&self, e: &Element) -> String {
        match e {
            Element::Index(i) if *i < self.size() => self.labels[*i].clone(),
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

pub(crate) fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}
