use crate::embeddings::{
    divisible_hull, formal_difference, modulate, regularize, unique_quotient, CanonicalMap, EmbeddingKind,
    RelationMode,
};
use crate::monoid::MonoidValue;
use crate::{Error, Result};

use super::category::{arrow, categories_of, CategoryId, TYPING_TABLE};

/// A sequence of constructions, applied left to right.
pub type Path = Vec<EmbeddingKind>;

/// Every typed path from `start` to `end` with between one and `max_len`
/// arrows, in lexicographic order (`R < F < D < U < M`).
pub fn enumerate_paths(start: CategoryId, end: CategoryId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    walk(start, end, max_len, &mut current, &mut out);
    out
}

fn walk(at: CategoryId, end: CategoryId, max_len: usize, current: &mut Path, out: &mut Vec<Path>) {
    if !current.is_empty() && at == end {
        out.push(current.clone());
    }
    if current.len() == max_len {
        return;
    }
    for kind in EmbeddingKind::ALL {
        if let Some(a) = arrow(kind, at) {
            current.push(kind);
            walk(a.target, end, max_len, current, out);
            current.pop();
        }
    }
}

/// Where a path lands when started at `start`, if every step is typed.
pub fn path_end(start: CategoryId, path: &[EmbeddingKind]) -> Option<CategoryId> {
    path.iter().try_fold(start, |at, &k| arrow(k, at).map(|a| a.target))
}

/// `(start, end)` for each category of `x` the path is typed from.
pub fn typed_ends(x: &MonoidValue, path: &[EmbeddingKind]) -> Vec<(CategoryId, CategoryId)> {
    categories_of(&x.flags()).into_iter().filter_map(|s| path_end(s, path).map(|e| (s, e))).collect()
}

/// Number of leading steps typed from `start`.
fn typed_prefix(start: CategoryId, path: &[EmbeddingKind]) -> usize {
    let mut at = start;
    for (i, &k) in path.iter().enumerate() {
        match arrow(k, at) {
            Some(a) => at = a.target,
            None => return i,
        }
    }
    path.len()
}

/// One construction step.
pub(crate) fn construct(kind: EmbeddingKind, x: &MonoidValue, mode: RelationMode) -> Result<(MonoidValue, CanonicalMap)> {
    match kind {
        EmbeddingKind::R => regularize(x),
        EmbeddingKind::F => formal_difference(x, mode),
        EmbeddingKind::D => divisible_hull(x, mode),
        EmbeddingKind::U => unique_quotient(x),
        EmbeddingKind::M => modulate(x),
    }
}

/// The most specific `(start, end)` a path is typed over for `x`, or a
/// type error naming the first untyped step (counted from 1).
pub(crate) fn check_typed(x: &MonoidValue, path: &[EmbeddingKind]) -> Result<(CategoryId, CategoryId)> {
    if path.is_empty() {
        return Err(Error::PathType { step: 0, message: "empty path".into() });
    }
    let ends = typed_ends(x, path);
    if let Some(best) = ends.into_iter().min_by_key(|(s, _)| s.specificity_rank()) {
        return Ok(best);
    }
    let cats = categories_of(&x.flags());
    let (start, done) = cats
        .iter()
        .map(|&s| (s, typed_prefix(s, path)))
        .max_by_key(|&(s, n)| (n, usize::MAX - s.specificity_rank()))
        .expect("every monoid is in S");
    let at = path_end(start, &path[..done]).expect("typed prefix");
    let sources: Vec<String> =
        TYPING_TABLE.iter().filter(|a| a.kind == path[done]).map(|a| a.source.to_string()).collect();
    Err(Error::PathType {
        step: done + 1,
        message: format!(
            "{} is not defined on {at} (only on {}) in {}",
            path[done],
            sources.join(", "),
            render_path(path)
        ),
    })
}

/// Applies the constructions of a typed path in turn and composes their
/// maps. Step failures carry the index of the failing step, counted from 1.
pub fn apply_path(x: &MonoidValue, path: &[EmbeddingKind], mode: RelationMode) -> Result<(MonoidValue, CanonicalMap)> {
    check_typed(x, path)?;
    let mut target = x.clone();
    let mut map = CanonicalMap::identity(x.clone());
    for (i, &k) in path.iter().enumerate() {
        let (next, step) = construct(k, &target, mode).map_err(|e| e.at_step(i + 1))?;
        map = map.then(&step);
        target = next;
    }
    Ok((target, map))
}

/// Parses `R,F,D` (commas and whitespace optional).
pub fn parse_path(s: &str) -> Result<Path> {
    let path: Path = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .flat_map(|t| t.chars().map(|c| c.to_string()).collect::<Vec<_>>())
        .map(|t| t.parse())
        .collect::<Result<_>>()?;
    if path.is_empty() {
        return Err(Error::Domain("empty path".into()));
    }
    Ok(path)
}

pub fn render_path(path: &[EmbeddingKind]) -> String {
    path.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
