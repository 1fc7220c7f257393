//! Bounded decision procedures for cancellativity and divisibility.
//!
//! Finite carriers are decided exactly: the power maps `x -> n*x` of a
//! finite monoid repeat, so checking the multipliers in
//! [`PowerProfile::distinct_multipliers`] covers every `n`. Infinite
//! carriers answer `True` only from structural knowledge, `False` only with
//! a witness, and `Unknown` otherwise.

use std::collections::HashSet;
use std::fmt;

use crate::monoid::{nsum, Division, Monoid, PowerProfile, SAMPLE_DEPTH};
use crate::{CategoryFlags, Decision, Element, EqResult, TriState};

/// `x + y = x + z` with `y != z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancelWitness {
    pub x: Element,
    pub y: Element,
    pub z: Element,
}

/// No `y` with `n*y = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionWitness {
    pub x: Element,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniqueDivisionWitness {
    /// `n*x1 = n*x2` with `x1 != x2`.
    NotUnique { x1: Element, x2: Element, n: u64 },
    NotDivisible(DivisionWitness),
}

/// Outcome of the search for an element whose multiples repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplesReport {
    /// No `x != 0` with `n1*x = n2*x`, `2 <= n1 < n2 <= bound`.
    Holds { bound: usize },
    CounterexampleFound { x: Element, n1: u64, n2: u64 },
    /// The monoid is not known to be uniquely divisible.
    Inapplicable(String),
    Inconclusive { bound: usize },
}

impl fmt::Display for MultiplesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplesReport::Holds { bound } => write!(f, "holds (n1, n2 <= {bound})"),
            MultiplesReport::CounterexampleFound { x, n1, n2 } => {
                write!(f, "counterexample ({x}, {n1}, {n2})")
            }
            MultiplesReport::Inapplicable(why) => write!(f, "inapplicable: {why}"),
            MultiplesReport::Inconclusive { bound } => write!(f, "inconclusive (bound {bound})"),
        }
    }
}

fn finite_profile<M: Monoid + ?Sized>(m: &M) -> Option<(Vec<Element>, PowerProfile)> {
    let all = m.enumerate()?;
    let profile = m.powers()?;
    Some((all, profile))
}

fn sampled<M: Monoid + ?Sized>(m: &M, bound: usize) -> Vec<Element> {
    m.sample(bound.min(SAMPLE_DEPTH))
}

/// Exact flags for a finite monoid. `base` supplies the cone and linear
/// flags, which are not properties of the additive table alone.
pub(crate) fn exhaustive_flags<M: Monoid + ?Sized>(m: &M, base: CategoryFlags) -> CategoryFlags {
    let Some(all) = m.enumerate() else { return base };
    let Some(profile) = crate::monoid::power_profile(m) else { return base };
    let add = |a: &Element, b: &Element| m.add(a, b).expect("closed finite carrier");
    let zero = m.zero();

    let cancellative = all.iter().all(|x| {
        let images: HashSet<Element> = all.iter().map(|y| add(x, y)).collect();
        images.len() == all.len()
    });
    let group = all.iter().all(|x| all.iter().any(|y| add(x, y) == zero));
    let mut divisible = true;
    let mut torsion_free = true;
    for n in profile.distinct_multipliers() {
        let images: HashSet<Element> =
            all.iter().map(|y| nsum(m, y, n).expect("closed finite carrier")).collect();
        divisible &= images.len() == all.len();
        torsion_free &= images.len() == all.len();
    }
    CategoryFlags {
        is_semigroup: true,
        is_cancellative: TriState::from_bool(cancellative),
        is_group: TriState::from_bool(group),
        is_divisible: TriState::from_bool(divisible),
        is_torsion_free: TriState::from_bool(torsion_free),
        is_uniquely_divisible: TriState::from_bool(divisible && torsion_free),
        is_cone: base.is_cone,
        is_linear: base.is_linear,
    }
    .normalized()
}

/// Decides the cancellation law.
pub fn is_cancellative<M: Monoid + ?Sized>(m: &M, bound: usize) -> Decision<CancelWitness> {
    if let Some(all) = m.enumerate() {
        for x in &all {
            for (i, y) in all.iter().enumerate() {
                for z in &all[i + 1..] {
                    if m.add(x, y).ok() == m.add(x, z).ok() {
                        return Decision::False(CancelWitness { x: x.clone(), y: y.clone(), z: z.clone() });
                    }
                }
            }
        }
        return Decision::True;
    }
    if m.flags().is_cancellative.is_true() {
        return Decision::True;
    }
    let s = sampled(m, bound);
    for x in &s {
        for (i, y) in s.iter().enumerate() {
            for z in &s[i + 1..] {
                let (Ok(xy), Ok(xz)) = (m.add(x, y), m.add(x, z)) else { continue };
                if m.eq(&xy, &xz).is_equal() && m.eq(y, z) == EqResult::NotEqual {
                    return Decision::False(CancelWitness { x: x.clone(), y: y.clone(), z: z.clone() });
                }
            }
        }
    }
    Decision::Unknown(bound)
}

/// Decides divisibility: every `x` has an `n`-th part for every `n`.
pub fn is_divisible<M: Monoid + ?Sized>(m: &M, bound: usize) -> Decision<DivisionWitness> {
    if let Some((all, profile)) = finite_profile(m) {
        let images: Vec<(u64, HashSet<Element>)> = profile
            .distinct_multipliers()
            .filter(|&n| n >= 2)
            .map(|n| (n, all.iter().filter_map(|y| nsum(m, y, n).ok()).collect()))
            .collect();
        for x in &all {
            for (n, image) in &images {
                if !image.contains(x) {
                    return Decision::False(DivisionWitness { x: x.clone(), n: *n });
                }
            }
        }
        return Decision::True;
    }
    if m.flags().is_divisible.is_true() {
        return Decision::True;
    }
    for x in sampled(m, bound) {
        for n in 2..=bound as u64 {
            if m.divide(&x, n) == Division::Impossible {
                return Decision::False(DivisionWitness { x, n });
            }
        }
    }
    Decision::Unknown(bound)
}

/// Decides whether `n*x1 = n*x2` forces `x1 = x2` for every `n >= 1`.
pub fn is_torsion_free<M: Monoid + ?Sized>(m: &M, bound: usize) -> Decision<UniqueDivisionWitness> {
    if let Some((all, profile)) = finite_profile(m) {
        for n in profile.distinct_multipliers() {
            let multiples: Vec<Element> = all.iter().filter_map(|y| nsum(m, y, n).ok()).collect();
            for i in 0..all.len() {
                for j in i + 1..all.len() {
                    if multiples[i] == multiples[j] {
                        return Decision::False(UniqueDivisionWitness::NotUnique {
                            x1: all[i].clone(),
                            x2: all[j].clone(),
                            n,
                        });
                    }
                }
            }
        }
        return Decision::True;
    }
    if m.flags().is_torsion_free.is_true() {
        return Decision::True;
    }
    let s = sampled(m, bound);
    for n in 2..=bound.min(SAMPLE_DEPTH) as u64 {
        let multiples: Vec<Option<Element>> = s.iter().map(|y| nsum(m, y, n).ok()).collect();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let (Some(a), Some(b)) = (&multiples[i], &multiples[j]) else { continue };
                if m.eq(a, b).is_equal() && m.eq(&s[i], &s[j]) == EqResult::NotEqual {
                    return Decision::False(UniqueDivisionWitness::NotUnique {
                        x1: s[i].clone(),
                        x2: s[j].clone(),
                        n,
                    });
                }
            }
        }
    }
    Decision::Unknown(bound)
}

/// Decides unique divisibility: divisible, and `n*x1 = n*x2` forces
/// `x1 = x2`. The uniqueness half is checked first.
pub fn is_uniquely_divisible<M: Monoid + ?Sized>(m: &M, bound: usize) -> Decision<UniqueDivisionWitness> {
    let unique = is_torsion_free(m, bound);
    if let Decision::False(w) = unique {
        return Decision::False(w);
    }
    match is_divisible(m, bound) {
        Decision::False(w) => Decision::False(UniqueDivisionWitness::NotDivisible(w)),
        Decision::True if unique.is_true() => Decision::True,
        _ => Decision::Unknown(bound),
    }
}

/// In a uniquely divisible monoid, searches for `x != 0` and
/// `2 <= n1 < n2 <= bound` with `n1*x = n2*x`.
pub fn check_distinct_multiples<M: Monoid + ?Sized>(m: &M, bound: usize) -> MultiplesReport {
    match is_uniquely_divisible(m, bound) {
        Decision::True => {}
        Decision::False(w) => {
            return MultiplesReport::Inapplicable(format!("not uniquely divisible: {}", render_ud(m, &w)))
        }
        Decision::Unknown(b) => {
            return MultiplesReport::Inapplicable(format!("unique divisibility undecided at bound {b}"))
        }
    }
    let elements = m.enumerate().unwrap_or_else(|| sampled(m, bound));
    let zero = m.zero();
    let mut undecided = false;
    for x in &elements {
        match m.eq(x, &zero) {
            EqResult::NotEqual => {}
            EqResult::Equal => continue,
            EqResult::Unknown(_) => {
                undecided = true;
                continue;
            }
        }
        let multiples: Vec<Option<Element>> = (0..=bound as u64).map(|n| nsum(m, x, n).ok()).collect();
        for n1 in 2..=bound {
            for n2 in n1 + 1..=bound {
                let (Some(a), Some(b)) = (&multiples[n1], &multiples[n2]) else { continue };
                match m.eq(a, b) {
                    EqResult::Equal => {
                        return MultiplesReport::CounterexampleFound {
                            x: x.clone(),
                            n1: n1 as u64,
                            n2: n2 as u64,
                        }
                    }
                    EqResult::Unknown(_) => undecided = true,
                    EqResult::NotEqual => {}
                }
            }
        }
    }
    if undecided {
        MultiplesReport::Inconclusive { bound }
    } else {
        MultiplesReport::Holds { bound }
    }
}

pub fn render_ud<M: Monoid + ?Sized>(m: &M, w: &UniqueDivisionWitness) -> String {
    match w {
        UniqueDivisionWitness::NotUnique { x1, x2, n } => {
            format!("{n}*{} = {n}*{} with {} != {}", m.render(x1), m.render(x2), m.render(x1), m.render(x2))
        }
        UniqueDivisionWitness::NotDivisible(DivisionWitness { x, n }) => {
            format!("{} has no {n}-th part", m.render(x))
        }
    }
}
