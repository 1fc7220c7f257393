use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embeddings::{CanonicalMap, RelationMode};
use crate::monoid::MonoidValue;
use crate::{Element, EqResult, Error, Result};

use super::category::{categories_of, CategoryId};
use super::expr::{evaluate, ExprLanguage, FormalExpr};
use super::paths::{check_typed, construct, enumerate_paths, path_end, render_path, Path};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathVerdict {
    Commute,
    /// Two expressions equal at one end and different at the other.
    Diverge { left: FormalExpr, right: FormalExpr, verdict_a: EqResult, verdict_b: EqResult },
    /// No disagreement, but this many pairs stayed undecided.
    Inconclusive { unknown: usize },
    /// A construction along one of the paths failed.
    Failed(Error),
}

impl PathVerdict {
    pub fn is_commute(&self) -> bool {
        matches!(self, PathVerdict::Commute)
    }

    pub fn is_diverge(&self) -> bool {
        matches!(self, PathVerdict::Diverge { .. })
    }
}

impl fmt::Display for PathVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathVerdict::Commute => write!(f, "commute"),
            PathVerdict::Diverge { left, right, verdict_a, verdict_b } => {
                write!(f, "diverge at {left} vs {right} ({verdict_a:?} / {verdict_b:?})")
            }
            PathVerdict::Inconclusive { unknown } => write!(f, "inconclusive ({unknown} undecided)"),
            PathVerdict::Failed(msg) => write!(f, "failed: {msg}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathReport {
    pub path_a: Path,
    pub path_b: Path,
    pub end: CategoryId,
    pub monoid: String,
    pub expressions: usize,
    pub pairs: usize,
    pub verdict: PathVerdict,
}

impl fmt::Display for PathReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] vs [{}] -> {} on {}: {} ({} expressions, {} pairs)",
            render_path(&self.path_a),
            render_path(&self.path_b),
            self.end,
            self.monoid,
            self.verdict,
            self.expressions,
            self.pairs
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramOptions {
    pub max_len: usize,
    pub expr_size: usize,
    pub pair_budget: usize,
    pub mode: RelationMode,
    pub seed: u64,
}

impl Default for DiagramOptions {
    fn default() -> Self {
        DiagramOptions { max_len: 4, expr_size: 3, pair_budget: 500, mode: RelationMode::Saturated, seed: 0 }
    }
}

/// Unordered index pairs `i < j`, subsampled to `budget` with a seeded
/// shuffle and returned sorted.
fn index_pairs(n: usize, budget: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if pairs.len() > budget {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(budget);
        pairs.sort_unstable();
    }
    pairs
}

/// Equality verdicts at one end, one per pair.
fn verdicts(map: &CanonicalMap, exprs: &[FormalExpr], pairs: &[(usize, usize)]) -> Result<Vec<EqResult>> {
    let gens = map.source().generators();
    let values: Vec<std::result::Result<Element, usize>> = exprs
        .iter()
        .map(|e| match evaluate(e, map, &gens) {
            Ok(v) => Ok(Ok(v)),
            Err(err) => match err.root() {
                Error::BoundExhausted { bound, .. } => Ok(Err(*bound)),
                _ => Err(Error::Domain(format!("evaluating {e} in {}: {err}", map.target().name()))),
            },
        })
        .collect::<Result<_>>()?;
    let t = map.target();
    Ok(pairs
        .iter()
        .map(|&(i, j)| match (&values[i], &values[j]) {
            (Ok(a), Ok(b)) => t.eq(a, b),
            (Err(k), _) | (_, Err(k)) => EqResult::Unknown(*k),
        })
        .collect())
}

fn judge(exprs: &[FormalExpr], pairs: &[(usize, usize)], a: &[EqResult], b: &[EqResult]) -> PathVerdict {
    let mut unknown = 0;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        match (a[k], b[k]) {
            (EqResult::Unknown(_), _) | (_, EqResult::Unknown(_)) => unknown += 1,
            (x, y) if x != y => {
                return PathVerdict::Diverge {
                    left: exprs[i].clone(),
                    right: exprs[j].clone(),
                    verdict_a: x,
                    verdict_b: y,
                }
            }
            _ => {}
        }
    }
    if unknown > 0 {
        PathVerdict::Inconclusive { unknown }
    } else {
        PathVerdict::Commute
    }
}

/// Compares two maps out of the same monoid on the given expressions.
/// Returns the verdict and the number of pairs checked.
pub fn compare_maps(
    a: &CanonicalMap,
    b: &CanonicalMap,
    exprs: &[FormalExpr],
    pair_budget: usize,
    seed: u64,
) -> (PathVerdict, usize) {
    let pairs = index_pairs(exprs.len(), pair_budget, seed);
    let verdict = match (verdicts(a, exprs, &pairs), verdicts(b, exprs, &pairs)) {
        (Ok(va), Ok(vb)) => judge(exprs, &pairs, &va, &vb),
        (Err(e), _) | (_, Err(e)) => PathVerdict::Failed(e),
    };
    (verdict, pairs.len())
}

/// The most specific category both paths end in from a common start.
fn common_end(x: &MonoidValue, pa: &[crate::EmbeddingKind], pb: &[crate::EmbeddingKind]) -> Result<CategoryId> {
    check_typed(x, pa)?;
    check_typed(x, pb)?;
    categories_of(&x.flags())
        .into_iter()
        .filter_map(|s| match (path_end(s, pa), path_end(s, pb)) {
            (Some(ea), Some(eb)) if ea == eb => Some(ea),
            _ => None,
        })
        .min_by_key(|e| e.specificity_rank())
        .ok_or_else(|| Error::PathType {
            step: 0,
            message: format!("[{}] and [{}] have no common end", render_path(pa), render_path(pb)),
        })
}

/// Compares two composites out of `x` ending in the same category, with the
/// default pair budget.
pub fn compare_paths(
    x: &MonoidValue,
    path_a: &[crate::EmbeddingKind],
    path_b: &[crate::EmbeddingKind],
    expr_size: usize,
    mode: RelationMode,
) -> Result<PathReport> {
    let opts = DiagramOptions { expr_size, mode, ..DiagramOptions::default() };
    let end = common_end(x, path_a, path_b)?;
    let mut cache = Cache::new(x, &opts);
    Ok(cache.report(path_a, path_b, end))
}

/// Constructions per path and verdict vectors per `(path, end)`, shared
/// across the reports of one diagram check.
struct Cache<'a> {
    x: &'a MonoidValue,
    opts: &'a DiagramOptions,
    built: HashMap<Path, Result<CanonicalMap>>,
    languages: HashMap<CategoryId, (Vec<FormalExpr>, Vec<(usize, usize)>)>,
    verdicts: HashMap<(Path, CategoryId), Result<Vec<EqResult>>>,
}

impl<'a> Cache<'a> {
    fn new(x: &'a MonoidValue, opts: &'a DiagramOptions) -> Self {
        Cache { x, opts, built: HashMap::new(), languages: HashMap::new(), verdicts: HashMap::new() }
    }

    fn build(&mut self, path: &[crate::EmbeddingKind]) -> Result<CanonicalMap> {
        if let Some(r) = self.built.get(path) {
            return r.clone();
        }
        let Some((&k, init)) = path.split_last() else {
            return Ok(CanonicalMap::identity(self.x.clone()));
        };
        let result = self.build(init).and_then(|m| {
            construct(k, m.target(), self.opts.mode)
                .map(|(_, step)| m.then(&step))
                .map_err(|e| e.at_step(path.len()))
        });
        self.built.insert(path.to_vec(), result.clone());
        result
    }

    fn language(&mut self, end: CategoryId) -> &(Vec<FormalExpr>, Vec<(usize, usize)>) {
        let (x, opts) = (self.x, self.opts);
        self.languages.entry(end).or_insert_with(|| {
            let exprs = ExprLanguage::for_category(end, x.generators().len()).enumerate(opts.expr_size);
            let pairs = index_pairs(exprs.len(), opts.pair_budget, opts.seed);
            (exprs, pairs)
        })
    }

    fn verdicts(&mut self, path: &[crate::EmbeddingKind], end: CategoryId) -> Result<Vec<EqResult>> {
        let key = (path.to_vec(), end);
        if let Some(v) = self.verdicts.get(&key) {
            return v.clone();
        }
        let map = self.build(path);
        let (exprs, pairs) = self.language(end).clone();
        let v = map.and_then(|m| verdicts(&m, &exprs, &pairs));
        self.verdicts.insert(key, v.clone());
        v
    }

    fn report(&mut self, pa: &[crate::EmbeddingKind], pb: &[crate::EmbeddingKind], end: CategoryId) -> PathReport {
        let va = self.verdicts(pa, end);
        let vb = self.verdicts(pb, end);
        let monoid = self.x.name();
        let (exprs, pairs) = self.language(end);
        let verdict = match (va, vb) {
            (Ok(a), Ok(b)) => judge(exprs, pairs, &a, &b),
            (Err(e), _) | (_, Err(e)) => PathVerdict::Failed(e),
        };
        PathReport {
            path_a: pa.to_vec(),
            path_b: pb.to_vec(),
            end,
            monoid,
            expressions: exprs.len(),
            pairs: pairs.len(),
            verdict,
        }
    }
}

/// Compares every pair of typed paths of length at most `max_len` that
/// start in a category of `x` and share an end. Pairs are visited by start
/// category, then end category, then lexicographically; a pair already
/// seen from a more general start is not repeated.
pub fn full_diagram_check(x: &MonoidValue, opts: &DiagramOptions) -> Vec<PathReport> {
    let mut cache = Cache::new(x, opts);
    let mut seen: HashSet<(Path, Path)> = HashSet::new();
    let mut reports = Vec::new();
    for start in categories_of(&x.flags()) {
        for end in CategoryId::ALL {
            let paths = enumerate_paths(start, end, opts.max_len);
            for (i, pa) in paths.iter().enumerate() {
                for pb in &paths[i + 1..] {
                    if !seen.insert((pa.clone(), pb.clone())) {
                        continue;
                    }
                    let end = match common_end(x, pa, pb) {
                        Ok(e) => e,
                        Err(_) => end,
                    };
                    reports.push(cache.report(pa, pb, end));
                }
            }
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{affine, cyclic, product, truncated};
    use crate::embeddings::EmbeddingKind::*;

    #[test]
    fn trivial_ends_commute() {
        let r = compare_paths(&truncated(3).unwrap(), &[R, F, D], &[D, R, F], 3, RelationMode::Saturated).unwrap();
        assert_eq!(r.verdict, PathVerdict::Commute);
    }

    #[test]
    fn torsion_collapses_on_both_sides() {
        let x = product(affine(1), cyclic(2).unwrap());
        let r = compare_paths(&x, &[R, F, D], &[D, R, F], 3, RelationMode::Saturated).unwrap();
        assert_eq!(r.verdict, PathVerdict::Commute, "{r}");
        assert!(r.pairs <= 500);
    }

    #[test]
    fn identical_paths() {
        let r = compare_paths(&affine(1), &[R, F], &[R, F], 3, RelationMode::Saturated).unwrap();
        assert_eq!(r.verdict, PathVerdict::Commute);
    }

    #[test]
    fn mismatched_ends_are_type_errors() {
        let err = compare_paths(&affine(1), &[R], &[D], 3, RelationMode::Saturated).unwrap_err();
        assert!(matches!(err, Error::PathType { .. }));
    }

    #[test]
    fn pair_subsampling_is_deterministic() {
        assert_eq!(index_pairs(40, 100, 7), index_pairs(40, 100, 7));
        assert_eq!(index_pairs(40, 100, 7).len(), 100);
        assert_eq!(index_pairs(5, 100, 7).len(), 10);
    }

    #[test]
    fn cyclic_diagram_commutes() {
        let reports = full_diagram_check(&cyclic(2).unwrap(), &DiagramOptions::default());
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.verdict.is_commute(), "{r}");
        }
    }
}
