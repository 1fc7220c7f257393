use std::collections::{HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::lattice::{AbelianGroupStructure, LatticeQuotient};
use crate::monoid::{Backend, Bounds, Monoid};
use crate::{CategoryFlags, Element, EqResult, Error, Result, TriState};

pub type Relation = (Vec<BigUint>, Vec<BigUint>);

/// The commutative monoid `<e_1..e_m | u_i = v_i>`. Elements are exponent
/// vectors; equality is a bounded breadth-first search over rewrites
/// `w + u_i <-> w + v_i`, short-circuited by the Grothendieck group.
#[derive(Debug)]
pub struct Presented {
    name: String,
    gens: usize,
    relations: Vec<Relation>,
    quotient: LatticeQuotient,
    bounds: Bounds,
    flags: CategoryFlags,
}

impl Presented {
    pub fn new(name: impl Into<String>, gens: usize, relations: Vec<Relation>, bounds: Bounds) -> Result<Self> {
        if gens == 0 {
            return Err(Error::Presentation("a presentation needs at least one generator".into()));
        }
        let quotient = LatticeQuotient::new(gens, &relations)?;
        let mut m = Presented {
            name: name.into(),
            gens,
            relations,
            quotient,
            bounds,
            flags: CategoryFlags::default(),
        };
        m.flags = m.structural_flags();
        Ok(m)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.gens
    }

    fn word<'a>(&self, e: &'a Element) -> Result<&'a [BigUint]> {
        match e {
            Element::Word(v) if v.len() == self.gens => Ok(v),
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name))),
        }
    }

    fn signed(v: &[BigUint]) -> Vec<BigInt> {
        v.iter().cloned().map(BigInt::from).collect()
    }

    fn group_difference(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigInt> {
        Self::signed(a).into_iter().zip(Self::signed(b)).map(|(x, y)| x - y).collect()
    }

    /// Words reachable by one rewrite.
    fn neighbours(&self, w: &[BigUint]) -> Vec<Vec<BigUint>> {
        let mut out = Vec::new();
        for (u, v) in &self.relations {
            for (from, to) in [(u, v), (v, u)] {
                if from.iter().zip(w).all(|(f, x)| f <= x) {
                    out.push(w.iter().zip(from).zip(to).map(|((x, f), t)| x - f + t).collect());
                }
            }
        }
        out
    }

    /// Group is certified when every generator has an inverse found in the
    /// bounded sample.
    fn structural_flags(&self) -> CategoryFlags {
        let zero = vec![BigUint::zero(); self.gens];
        let sample = self.words(self.bounds.search.min(crate::monoid::SAMPLE_DEPTH));
        let invertible = (0..self.gens).all(|i| {
            sample.iter().any(|w| {
                let mut s = w.clone();
                s[i] += 1u32;
                self.word_eq(&s, &zero) == EqResult::Equal
            })
        });
        CategoryFlags {
            is_group: if invertible { TriState::True } else { TriState::Unknown(self.bounds.search) },
            ..Default::default()
        }
        .normalized()
    }

    fn words(&self, depth: usize) -> Vec<Vec<BigUint>> {
        let mut out = vec![vec![BigUint::zero(); self.gens]];
        let mut frontier = out.clone();
        let mut seen: HashSet<Vec<BigUint>> = out.iter().cloned().collect();
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.gens {
                    let mut x = w.clone();
                    x[i] += 1u32;
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn word_eq(&self, a: &[BigUint], b: &[BigUint]) -> EqResult {
        if a == b {
            return EqResult::Equal;
        }
        if !self.quotient.contains(&self.group_difference(a, b)) {
            return EqResult::NotEqual;
        }
        let budget = self.bounds.rewrite_states;
        let mut seen: HashSet<Vec<BigUint>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(a.to_vec());
        queue.push_back(a.to_vec());
        while let Some(w) = queue.pop_front() {
            for n in self.neighbours(&w) {
                if n == b {
                    return EqResult::Equal;
                }
                if seen.len() >= budget {
                    return EqResult::Unknown(budget);
                }
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        EqResult::NotEqual
    }
}

impl Monoid for Presented {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn backend(&self) -> Backend {
        Backend::FinitelyPresented
    }

    fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn flags(&self) -> CategoryFlags {
        self.flags
    }

    fn zero(&self) -> Element {
        Element::Word(vec![BigUint::zero(); self.gens])
    }

    fn generators(&self) -> Vec<Element> {
        (0..self.gens)
            .map(|i| Element::Word((0..self.gens).map(|j| BigUint::from(u32::from(i == j))).collect()))
            .collect()
    }

    fn contains(&self, e: &Element) -> bool {
        self.word(e).is_ok()
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let (a, b) = (self.word(a)?, self.word(b)?);
        Ok(Element::Word(a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        match (self.word(a), self.word(b)) {
            (Ok(a), Ok(b)) => self.word_eq(a, b),
            _ => EqResult::NotEqual,
        }
    }

    /// Exact: `t + a = t + b` for some `t` exactly when `a - b` lies in the
    /// relation lattice.
    fn cancel_eq(&self, a: &Element, b: &Element) -> EqResult {
        match (self.word(a), self.word(b)) {
            (Ok(a), Ok(b)) => EqResult::from_bool(self.quotient.contains(&self.group_difference(a, b))),
            _ => EqResult::NotEqual,
        }
    }

    fn sample(&self, depth: usize) -> Vec<Element> {
        self.words(depth).into_iter().map(Element::Word).collect()
    }

    fn rational_image(&self, e: &Element) -> Option<Vec<BigRational>> {
        let w = self.word(e).ok()?;
        Some(
            self.quotient
                .free_coordinates(&Self::signed(w))
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    fn image_detects_torsion(&self) -> bool {
        true
    }

    fn grothendieck(&self) -> Option<AbelianGroupStructure> {
        Some(self.quotient.structure().clone())
    }
}
