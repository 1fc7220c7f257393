//! Executable checks of the structural claims about each construction.

use std::fmt;

use num_rational::BigRational;

use crate::monoid::{nsum, MonoidValue};
use crate::predicates::{is_cancellative, is_divisible, is_torsion_free, is_uniquely_divisible, render_ud};
use crate::{Decision, Element, EqResult, Error, Result, TriState};

use super::{
    check_elements, divisible_hull, formal_difference, modulate, regularize, sample_pairs, unique_quotient,
    CanonicalMap, RelationMode,
};

/// The claims that can be checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// `R` is an additive map onto a cancellative monoid.
    Regularization,
    /// On cancellative `X`, `F` is injective and every element is `F(a) - F(b)`.
    FormalDifference,
    /// `D` is additive into a divisible monoid and generates it up to multiples.
    DivisibleHull,
    /// `U` is an additive map onto a monoid where `n*a = n*b` forces `a = b`.
    UniqueQuotient,
    /// On uniquely divisible `X`, `M` is injective and its image spans the cone.
    Modulation,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::Regularization,
        Theorem::FormalDifference,
        Theorem::DivisibleHull,
        Theorem::UniqueQuotient,
        Theorem::Modulation,
    ];

    pub fn construction(self) -> char {
        match self {
            Theorem::Regularization => 'R',
            Theorem::FormalDifference => 'F',
            Theorem::DivisibleHull => 'D',
            Theorem::UniqueQuotient => 'U',
            Theorem::Modulation => 'M',
        }
    }
}

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// A property that does not hold here but is reported rather than required.
    Finding,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Finding => "finding",
            Outcome::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Finding,
    Inapplicable(String),
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Finding => write!(f, "finding"),
            Verdict::Inapplicable(why) => write!(f, "inapplicable: {why}"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub monoid: String,
    pub mode: RelationMode,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

struct Checks {
    x: MonoidValue,
    list: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: &str, outcome: Outcome, detail: impl Into<String>) {
        self.list.push(Check { name: name.into(), outcome, detail: detail.into() });
    }

    fn tri(&mut self, name: &str, t: TriState, detail: impl Into<String>) {
        let outcome = match t {
            TriState::True => Outcome::Pass,
            TriState::False => Outcome::Fail,
            TriState::Unknown(_) => Outcome::Unknown,
        };
        self.push(name, outcome, detail);
    }

    fn homomorphism(&mut self, map: &CanonicalMap, pairs: &[(Element, Element)]) {
        let h = map.check_homomorphism(pairs);
        let detail = match &h.failure {
            Some((a, b)) => format!("fails at ({}, {})", self.x.render(a), self.x.render(b)),
            None if h.zero == EqResult::NotEqual => "zero not preserved".to_string(),
            None => format!("{} pairs, {} undecided", h.checked, h.unknown),
        };
        self.tri("homomorphism", h.verdict(), detail);
    }

    fn injective(&mut self, map: &CanonicalMap, pairs: &[(Element, Element)], failure: Outcome) {
        match map.check_injective(pairs) {
            Decision::True => self.push("injective", Outcome::Pass, format!("{} pairs", pairs.len())),
            Decision::False((a, b)) => self.push(
                "injective",
                failure,
                format!("{} and {} have the same image", self.x.render(&a), self.x.render(&b)),
            ),
            Decision::Unknown(k) => self.push("injective", Outcome::Unknown, format!("undecided at bound {k}")),
        }
    }

    /// Finite targets: every element is hit. Lazy quotients share their
    /// elements with the source, so each sampled element is its own preimage.
    fn surjective(&mut self, map: &CanonicalMap) {
        let source = check_elements(map.source());
        if map.target().is_finite() {
            match map.check_surjective(&source) {
                Decision::True => self.push("surjective", Outcome::Pass, "every class has a preimage"),
                Decision::False(e) => {
                    self.push("surjective", Outcome::Fail, format!("{} has no preimage", map.target().render(&e)))
                }
                Decision::Unknown(k) => self.push("surjective", Outcome::Unknown, format!("bound {k}")),
            }
            return;
        }
        let t = map.target();
        let mut unknown = 0;
        for e in t.sample(crate::monoid::SAMPLE_DEPTH) {
            match map.apply(&e).map(|fe| t.eq(&fe, &e)) {
                Ok(EqResult::Equal) => {}
                Ok(EqResult::Unknown(_)) => unknown += 1,
                _ => {
                    self.push("surjective", Outcome::Fail, format!("{} has no preimage", t.render(&e)));
                    return;
                }
            }
        }
        let outcome = if unknown > 0 { Outcome::Unknown } else { Outcome::Pass };
        self.push("surjective", outcome, "sampled classes are images of their representatives");
    }
}

fn aggregate(checks: &[Check]) -> Verdict {
    let has = |o: Outcome| checks.iter().any(|c| c.outcome == o);
    if has(Outcome::Fail) {
        Verdict::Fail
    } else if has(Outcome::Unknown) {
        Verdict::Inconclusive
    } else if has(Outcome::Finding) {
        Verdict::Finding
    } else {
        Verdict::Pass
    }
}

/// Runs the construction named by `which` on `x` and checks its claims on
/// every element (finite `x`) or on `budget` sampled pairs drawn with `seed`.
pub fn check_theorem(
    which: Theorem,
    x: &MonoidValue,
    mode: RelationMode,
    budget: usize,
    seed: u64,
) -> TheoremReport {
    let mut checks = Checks { x: x.clone(), list: Vec::new() };
    let verdict = match run(which, x, mode, budget, seed, &mut checks) {
        Ok(None) => aggregate(&checks.list),
        Ok(Some(why)) => Verdict::Inapplicable(why),
        Err(e) => {
            let outcome = if e.root().is_bound_exhausted() { Outcome::Unknown } else { Outcome::Fail };
            checks.push("construction", outcome, e.to_string());
            aggregate(&checks.list)
        }
    };
    TheoremReport { theorem: which, monoid: x.name(), mode, verdict, checks: checks.list }
}

fn run(
    which: Theorem,
    x: &MonoidValue,
    mode: RelationMode,
    budget: usize,
    seed: u64,
    checks: &mut Checks,
) -> Result<Option<String>> {
    let bound = x.bounds().search;
    let pairs = sample_pairs(x, budget, seed);
    match which {
        Theorem::Regularization => {
            let (t, map) = regularize(x)?;
            checks.homomorphism(&map, &pairs);
            checks.surjective(&map);
            let c = is_cancellative(&*t, bound);
            checks.tri("target cancellative", c.tri(), describe(&c, |w| {
                format!("{} + {} = {} + {}", t.render(&w.x), t.render(&w.y), t.render(&w.x), t.render(&w.z))
            }));
        }
        Theorem::FormalDifference => {
            match is_cancellative(&**x, bound) {
                Decision::True => {}
                Decision::False(w) => {
                    return Ok(Some(format!(
                        "not cancellative: {} + {} = {} + {}",
                        x.render(&w.x),
                        x.render(&w.y),
                        x.render(&w.x),
                        x.render(&w.z)
                    )))
                }
                Decision::Unknown(b) => {
                    checks.push("hypothesis", Outcome::Unknown, format!("cancellativity undecided at bound {b}"));
                    return Ok(None);
                }
            }
            let (t, map) = formal_difference(x, mode)?;
            checks.homomorphism(&map, &pairs);
            checks.injective(&map, &pairs, Outcome::Fail);
            let mut failure = None;
            let mut unknown = 0;
            for e in check_elements(&t).into_iter().take(budget.max(1)) {
                let Element::Pair(y, z) = t.representative(&e) else {
                    failure = Some(e);
                    break;
                };
                let diff = t.add(&map.apply(&z)?, &t.negate(&map.apply(&y)?)?)?;
                match t.eq(&e, &diff) {
                    EqResult::Equal => {}
                    EqResult::Unknown(_) => unknown += 1,
                    EqResult::NotEqual => {
                        failure = Some(e);
                        break;
                    }
                }
            }
            match failure {
                Some(e) => checks.push("differences", Outcome::Fail, format!("{} is not F(a) - F(b)", t.render(&e))),
                None if unknown > 0 => checks.push("differences", Outcome::Unknown, format!("{unknown} undecided")),
                None => checks.push("differences", Outcome::Pass, "every sampled element is F(z) - F(y)"),
            }
            if let Some(g) = t.grothendieck() {
                checks.push("grothendieck group", Outcome::Pass, g.to_string());
            }
        }
        Theorem::DivisibleHull => {
            let (t, map) = divisible_hull(x, mode)?;
            checks.homomorphism(&map, &pairs);
            let d = is_divisible(&*t, bound);
            checks.tri("target divisible", d.tri(), describe(&d, |w| format!("{} has no {}-th part", t.render(&w.x), w.n)));
            let mut failure = None;
            for e in check_elements(&t) {
                let Element::Fraction(xe, n) = t.representative(&e) else {
                    failure = Some(e);
                    break;
                };
                let n = u64::try_from(&n).map_err(|_| Error::Domain(format!("denominator {n} too large")))?;
                if t.eq(&nsum(&*t, &e, n)?, &map.apply(&xe)?) != EqResult::Equal {
                    failure = Some(e);
                    break;
                }
            }
            match failure {
                Some(e) => checks.push("multiples", Outcome::Fail, format!("no multiple of {} lies in D(X)", t.render(&e))),
                None => checks.push("multiples", Outcome::Pass, "n*(x/n) = D(x) for every sampled x/n"),
            }
            checks.injective(&map, &pairs, Outcome::Finding);
        }
        Theorem::UniqueQuotient => {
            let (t, map) = unique_quotient(x)?;
            checks.homomorphism(&map, &pairs);
            checks.surjective(&map);
            let u = is_torsion_free(&*t, bound);
            checks.tri("target torsion-free", u.tri(), describe(&u, |w| render_ud(&*t, w)));
            if x.flags().is_divisible.is_true() {
                let d = is_divisible(&*t, bound);
                checks.tri("target divisible", d.tri(), describe(&d, |w| format!("{} has no {}-th part", t.render(&w.x), w.n)));
            }
        }
        Theorem::Modulation => {
            match is_uniquely_divisible(&**x, bound) {
                Decision::True => {}
                Decision::False(w) => return Ok(Some(format!("not uniquely divisible: {}", render_ud(&**x, &w)))),
                Decision::Unknown(b) => {
                    checks.push("hypothesis", Outcome::Unknown, format!("unique divisibility undecided at bound {b}"));
                    return Ok(None);
                }
            }
            let (t, map) = modulate(x)?;
            checks.homomorphism(&map, &pairs);
            checks.injective(&map, &pairs, Outcome::Fail);
            let mut failure = None;
            let mut unknown = 0;
            for e in t.sample(crate::monoid::SAMPLE_DEPTH).into_iter().take(budget.max(1)) {
                let Element::Combo(terms) = &e else { continue };
                let mut acc = t.zero();
                for (q, base) in terms {
                    acc = t.add(&acc, &t.scale(q, &map.apply(base)?)?)?;
                }
                match t.eq(&e, &acc) {
                    EqResult::Equal => {}
                    EqResult::Unknown(_) => unknown += 1,
                    EqResult::NotEqual => {
                        failure = Some(e);
                        break;
                    }
                }
            }
            match failure {
                Some(e) => checks.push("envelope", Outcome::Fail, format!("{} is not a combination of M-images", t.render(&e))),
                None if unknown > 0 => checks.push("envelope", Outcome::Unknown, format!("{unknown} undecided")),
                None => checks.push("envelope", Outcome::Pass, "every sampled element is sum q_k * M(x_k)"),
            }
            cone_axioms(&t, checks);
        }
    }
    Ok(None)
}

fn describe<W>(d: &Decision<W>, render: impl Fn(&W) -> String) -> String {
    match d {
        Decision::True => "holds".into(),
        Decision::False(w) => render(w),
        Decision::Unknown(b) => format!("undecided at bound {b}"),
    }
}

fn cone_axioms(c: &MonoidValue, checks: &mut Checks) {
    let half = BigRational::new(1.into(), 2.into());
    let two = BigRational::from_integer(2.into());
    let elems = c.sample(2);
    let mut bad = None;
    'outer: for a in &elems {
        for b in &elems {
            let lhs = c.scale(&half, &c.add(a, b).expect("closed"));
            let rhs = c.add(&c.scale(&half, a).expect("cone"), &c.scale(&half, b).expect("cone"));
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                if c.eq(&l, &r) == EqResult::NotEqual {
                    bad = Some("a*(x + y) = a*x + a*y");
                    break 'outer;
                }
            }
        }
        let sum = c.scale(&(&half + &two), a);
        let split = c.add(&c.scale(&half, a).expect("cone"), &c.scale(&two, a).expect("cone"));
        if let (Ok(l), Ok(r)) = (sum, split) {
            if c.eq(&l, &r) == EqResult::NotEqual {
                bad = Some("(a + b)*x = a*x + b*x");
                break;
            }
        }
    }
    match bad {
        Some(law) => checks.push("cone axioms", Outcome::Fail, law),
        None => checks.push("cone axioms", Outcome::Pass, format!("{} sampled elements", elems.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{affine, cyclic, truncated};

    #[test]
    fn regularization_of_truncated() {
        let r = check_theorem(Theorem::Regularization, &truncated(3).unwrap(), RelationMode::Saturated, 100, 0);
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }

    #[test]
    fn difference_of_naturals() {
        let r = check_theorem(Theorem::FormalDifference, &affine(1), RelationMode::Literal, 100, 0);
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }

    #[test]
    fn hull_of_cyclic_is_a_finding() {
        let r = check_theorem(Theorem::DivisibleHull, &cyclic(2).unwrap(), RelationMode::Saturated, 100, 0);
        assert_eq!(r.verdict, Verdict::Finding, "{r:?}");
    }

    #[test]
    fn modulation_needs_hypothesis() {
        let r = check_theorem(Theorem::Modulation, &affine(1), RelationMode::Saturated, 100, 0);
        assert!(matches!(r.verdict, Verdict::Inapplicable(_)));
    }
}
