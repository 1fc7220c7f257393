use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::lattice::{sublattice_structure, AbelianGroupStructure};
use crate::monoid::{Backend, Bounds, Division, Monoid};
use crate::{CategoryFlags, Element, EqResult, Error, Result, TriState};

/// The submonoid of `(N^d, +)` generated by finitely many vectors.
#[derive(Debug)]
pub struct Affine {
    name: String,
    dim: usize,
    generators: Vec<Vec<BigUint>>,
    standard: bool,
    bounds: Bounds,
    membership: Mutex<HashMap<Vec<BigUint>, bool>>,
}

impl Affine {
    /// `N^d` with the unit vectors as generators.
    pub fn standard(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| (0..dim).map(|j| BigUint::from(u32::from(i == j))).collect())
            .collect();
        Affine {
            name: if dim == 1 { "N".into() } else { format!("N^{dim}") },
            dim,
            generators: gens,
            standard: true,
            bounds: Bounds::default(),
            membership: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_generators(name: impl Into<String>, dim: usize, gens: Vec<Vec<BigUint>>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(Error::Presentation(format!("generator of length {} in dimension {dim}", g.len())));
        }
        let mut unique: Vec<Vec<BigUint>> = gens.into_iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
        unique.sort();
        unique.dedup();
        let standard = unique.len() == dim
            && unique.iter().all(|g| g.iter().filter(|x| !x.is_zero()).count() == 1 && g.iter().any(|x| *x == BigUint::from(1u32)));
        Ok(Affine {
            name: name.into(),
            dim,
            generators: unique,
            standard,
            bounds: Bounds::default(),
            membership: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_vectors(&self) -> &[Vec<BigUint>] {
        &self.generators
    }

    fn vector<'a>(&self, e: &'a Element) -> Result<&'a [BigUint]> {
        match e {
            Element::Vector(v) if v.len() == self.dim => Ok(v),
            other => Err(Error::Domain(format!("{other} is not an element of {}", self.name))),
        }
    }

    /// Is `v` a nonnegative integer combination of the generators?
    fn member(&self, v: &[BigUint]) -> bool {
        if self.standard || v.iter().all(Zero::is_zero) {
            return true;
        }
        if let Some(&known) = self.membership.lock().expect("membership cache").get(v) {
            return known;
        }
        let result = self.generators.iter().any(|g| {
            g.iter().zip(v).all(|(a, b)| a <= b) && {
                let rest: Vec<BigUint> = v.iter().zip(g).map(|(a, b)| a - b).collect();
                self.member(&rest)
            }
        });
        self.membership.lock().expect("membership cache").insert(v.to_vec(), result);
        result
    }
}

impl Monoid for Affine {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn backend(&self) -> Backend {
        Backend::Affine
    }

    fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn flags(&self) -> CategoryFlags {
        let trivial = self.generators.is_empty();
        CategoryFlags {
            is_cancellative: TriState::True,
            is_group: TriState::from_bool(trivial),
            is_divisible: TriState::from_bool(trivial),
            is_torsion_free: TriState::True,
            ..Default::default()
        }
        .normalized()
    }

    fn zero(&self) -> Element {
        Element::Vector(vec![BigUint::zero(); self.dim])
    }

    fn generators(&self) -> Vec<Element> {
        self.generators.iter().cloned().map(Element::Vector).collect()
    }

    fn contains(&self, e: &Element) -> bool {
        matches!(e, Element::Vector(v) if v.len() == self.dim && self.member(v))
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let (a, b) = (self.vector(a)?, self.vector(b)?);
        Ok(Element::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }

    fn eq(&self, a: &Element, b: &Element) -> EqResult {
        EqResult::from_bool(a == b)
    }

    fn cancel_eq(&self, a: &Element, b: &Element) -> EqResult {
        self.eq(a, b)
    }

    fn torsion_eq(&self, a: &Element, b: &Element) -> EqResult {
        self.eq(a, b)
    }

    /// Sums of at most `depth` generators.
    fn sample(&self, depth: usize) -> Vec<Element> {
        let mut seen: BTreeSet<(usize, Vec<BigUint>)> = BTreeSet::new();
        let mut frontier = vec![vec![BigUint::zero(); self.dim]];
        let mut all = vec![(0usize, frontier[0].clone())];
        let mut visited: BTreeSet<Vec<BigUint>> = frontier.iter().cloned().collect();
        for level in 1..=depth {
            let mut next = Vec::new();
            for v in &frontier {
                for g in &self.generators {
                    let w: Vec<BigUint> = v.iter().zip(g).map(|(a, b)| a + b).collect();
                    if visited.insert(w.clone()) {
                        all.push((level, w.clone()));
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        seen.extend(all);
        seen.into_iter().map(|(_, v)| Element::Vector(v)).collect()
    }

    fn negate(&self, e: &Element) -> Result<Element> {
        let v = self.vector(e)?;
        if v.iter().all(Zero::is_zero) {
            Ok(e.clone())
        } else {
            Err(Error::NotAGroup(format!("{} (no negative of {e})", self.name)))
        }
    }

    fn divide(&self, e: &Element, n: u64) -> Division {
        let Ok(v) = self.vector(e) else { return Division::Impossible };
        if n == 0 {
            return Division::Impossible;
        }
        let n = BigUint::from(n);
        let mut part = Vec::with_capacity(v.len());
        for x in v {
            let (q, r) = x.div_rem(&n);
            if !r.is_zero() {
                return Division::Impossible;
            }
            part.push(q);
        }
        if self.member(&part) {
            Division::Part(Element::Vector(part))
        } else {
            Division::Impossible
        }
    }

    fn rational_image(&self, e: &Element) -> Option<Vec<BigRational>> {
        let v = self.vector(e).ok()?;
        Some(v.iter().map(|x| BigRational::from_integer(BigInt::from(x.clone()))).collect())
    }

    fn image_detects_torsion(&self) -> bool {
        true
    }

    fn grothendieck(&self) -> Option<AbelianGroupStructure> {
        Some(sublattice_structure(&self.generators, self.dim))
    }
}
