//! The line-oriented presentation format.
//!
//! ```text
//! monoid Z3
//! kind cayley
//! elements 0 1 2
//! row 0: 0 1 2
//! row 1: 1 2 0
//! row 2: 2 0 1
//! ```
//!
//! Other kinds: `affine` (`dim d`, then `gen v1 .. vd` per generator), `fp`
//! (`gens m`, then `rel u1 .. um -> v1 .. vm`), `builtin` (`name <entry>`
//! and `param k`) and `product` (`left { .. }` and `right { .. }` blocks
//! holding nested presentations). `#` starts a comment.

use std::fmt;

use embedkit::backends::{Affine, Cayley, Presented, Relation};
use embedkit::catalog::{builtin_with_bounds, product};
use embedkit::{Bounds, MonoidValue};
use num_bigint::BigUint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: Option<String>,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Cayley { elements: Vec<String>, rows: Vec<Vec<usize>> },
    Affine { dim: usize, gens: Vec<Vec<BigUint>> },
    Fp { gens: usize, relations: Vec<Relation> },
    Builtin { name: String, params: Vec<u64> },
    Product { left: Box<Presentation>, right: Box<Presentation> },
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Cayley { .. } => "cayley",
            Body::Affine { .. } => "affine",
            Body::Fp { .. } => "fp",
            Body::Builtin { .. } => "builtin",
            Body::Product { .. } => "product",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error: {0}")]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Invalid(#[from] embedkit::Error),
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Clone, Debug)]
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn err(&self, tok: usize, message: impl Into<String>) -> SyntaxError {
        let column = self.tokens.get(tok).map_or(1, |t| t.column);
        SyntaxError { line: self.number, column, message: message.into() }
    }

    fn end_err(&self, message: impl Into<String>) -> SyntaxError {
        let column = self.tokens.last().map_or(1, |t| t.column + t.text.chars().count());
        SyntaxError { line: self.number, column, message: message.into() }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (byte, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (c.is_whitespace() || c == ':', start) {
                (true, Some(s)) => {
                    tokens.push(Token { text: &content[s..byte], column: content[..s].chars().count() + 1 });
                    start = None;
                }
                (false, None) => start = Some(byte),
                _ => {}
            }
            if c == ':' {
                tokens.push(Token { text: ":", column: content[..byte].chars().count() + 1 });
            }
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn number<T: std::str::FromStr>(line: &Line, tok: usize, what: &str) -> Result<T, SyntaxError> {
    let Some(t) = line.tokens.get(tok) else { return Err(line.end_err(format!("expected {what}"))) };
    t.text.parse().map_err(|_| line.err(tok, format!("expected {what}, found `{}`", t.text)))
}

fn naturals(line: &Line, from: usize, to: usize) -> Result<Vec<BigUint>, SyntaxError> {
    (from..to).map(|i| number(line, i, "a nonnegative integer")).collect()
}

#[derive(Default)]
struct Draft<'a> {
    name: Option<String>,
    kind: Option<(String, usize)>,
    elements: Option<Vec<String>>,
    rows: Vec<(Line<'a>, Vec<String>)>,
    dim: Option<usize>,
    vectors: Vec<(usize, Vec<BigUint>)>,
    gens: Option<usize>,
    relations: Vec<(usize, Vec<BigUint>, Vec<BigUint>)>,
    builtin: Option<String>,
    params: Vec<u64>,
    left: Option<Presentation>,
    right: Option<Presentation>,
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    /// Reads directives up to a closing `}` (nested) or the end of input.
    fn block(&mut self, nested: Option<&Line>) -> Result<Presentation, SyntaxError> {
        let mut d = Draft::default();
        let mut seen: Vec<(&str, usize)> = Vec::new();
        let mut closed = false;
        let mut first_line = None;
        while self.pos < self.lines.len() {
            let line = self.lines[self.pos].clone();
            self.pos += 1;
            first_line.get_or_insert(line.number);
            let head = line.tokens[0].text;
            if head == "}" {
                if nested.is_none() {
                    return Err(line.err(0, "unmatched `}`"));
                }
                if line.tokens.len() > 1 {
                    return Err(line.err(1, "unexpected token after `}`"));
                }
                closed = true;
                break;
            }
            let once = |seen: &mut Vec<(&str, usize)>, key: &'static str| -> Result<(), SyntaxError> {
                if let Some((_, at)) = seen.iter().find(|(k, _)| *k == key) {
                    return Err(line.err(0, format!("duplicate `{key}` (first on line {at})")));
                }
                seen.push((key, line.number));
                Ok(())
            };
            match head {
                "monoid" => {
                    once(&mut seen, "monoid")?;
                    if line.tokens.len() < 2 {
                        return Err(line.end_err("expected a name"));
                    }
                    let words: Vec<&str> = line.tokens[1..].iter().map(|t| t.text).collect();
                    d.name = Some(words.join(" "));
                }
                "kind" => {
                    once(&mut seen, "kind")?;
                    let Some(t) = line.tokens.get(1) else { return Err(line.end_err("expected a kind")) };
                    if !["cayley", "affine", "fp", "product", "builtin"].contains(&t.text) {
                        return Err(line.err(1, format!("unknown kind `{}`", t.text)));
                    }
                    expect_end(&line, 2)?;
                    d.kind = Some((t.text.to_string(), line.number));
                }
                "elements" => {
                    once(&mut seen, "elements")?;
                    if line.tokens.len() < 2 {
                        return Err(line.end_err("expected element labels"));
                    }
                    let labels: Vec<String> = line.tokens[1..].iter().map(|t| t.text.to_string()).collect();
                    for (i, l) in labels.iter().enumerate() {
                        if labels[..i].contains(l) {
                            return Err(line.err(i + 1, format!("duplicate label `{l}`")));
                        }
                    }
                    d.elements = Some(labels);
                }
                "row" => {
                    let colon = line.tokens.iter().position(|t| t.text == ":");
                    if colon != Some(2) {
                        return Err(line.err(colon.map_or(2, |_| 1), "expected `row <i>: <entries>`"));
                    }
                    let entries = line.tokens[3..].iter().map(|t| t.text.to_string()).collect();
                    d.rows.push((line, entries));
                }
                "dim" => {
                    once(&mut seen, "dim")?;
                    d.dim = Some(number(&line, 1, "a dimension")?);
                    expect_end(&line, 2)?;
                }
                "gen" => {
                    d.vectors.push((line.number, naturals(&line, 1, line.tokens.len())?));
                }
                "gens" => {
                    once(&mut seen, "gens")?;
                    d.gens = Some(number(&line, 1, "a generator count")?);
                    expect_end(&line, 2)?;
                }
                "rel" => {
                    let Some(arrow) = line.tokens.iter().position(|t| t.text == "->") else {
                        return Err(line.end_err("expected `->`"));
                    };
                    let u = naturals(&line, 1, arrow)?;
                    let v = naturals(&line, arrow + 1, line.tokens.len())?;
                    d.relations.push((line.number, u, v));
                }
                "name" => {
                    once(&mut seen, "name")?;
                    let Some(t) = line.tokens.get(1) else { return Err(line.end_err("expected a catalog name")) };
                    d.builtin = Some(t.text.to_string());
                    expect_end(&line, 2)?;
                }
                "param" => {
                    if line.tokens.len() < 2 {
                        return Err(line.end_err("expected a parameter"));
                    }
                    for i in 1..line.tokens.len() {
                        d.params.push(number(&line, i, "an integer parameter")?);
                    }
                }
                "left" | "right" => {
                    once(&mut seen, if head == "left" { "left" } else { "right" })?;
                    match line.tokens.get(1) {
                        Some(t) if t.text == "{" => expect_end(&line, 2)?,
                        Some(_) => return Err(line.err(1, "expected `{`")),
                        None => return Err(line.end_err("expected `{`")),
                    }
                    let inner = self.block(Some(&line))?;
                    if head == "left" {
                        d.left = Some(inner);
                    } else {
                        d.right = Some(inner);
                    }
                }
                other => return Err(line.err(0, format!("unknown directive `{other}`"))),
            }
        }
        if let Some(open) = nested {
            if !closed {
                return Err(open.err(1, "unclosed `{`"));
            }
        }
        let at = first_line.unwrap_or(1);
        finish(d, at, &seen)
    }
}

fn expect_end(line: &Line, n: usize) -> Result<(), SyntaxError> {
    if line.tokens.len() > n {
        return Err(line.err(n, format!("unexpected `{}`", line.tokens[n].text)));
    }
    Ok(())
}

fn finish(d: Draft<'_>, at: usize, seen: &[(&str, usize)]) -> Result<Presentation, SyntaxError> {
    let here = |line: usize, message: String| SyntaxError { line, column: 1, message };
    let Some((kind, kind_line)) = d.kind.clone() else {
        return Err(here(at, "missing `kind`".into()));
    };
    let allowed: &[&str] = match kind.as_str() {
        "cayley" => &["monoid", "kind", "elements"],
        "affine" => &["monoid", "kind", "dim"],
        "fp" => &["monoid", "kind", "gens"],
        "builtin" => &["monoid", "kind", "name"],
        _ => &["monoid", "kind", "left", "right"],
    };
    if let Some((key, line)) = seen.iter().find(|(k, _)| !allowed.contains(k)) {
        return Err(here(*line, format!("`{key}` does not apply to kind {kind}")));
    }
    let stray = |what: &str, line: Option<usize>| match line {
        Some(l) => Err(here(l, format!("`{what}` does not apply to kind {kind}"))),
        None => Ok(()),
    };
    if kind != "cayley" {
        stray("row", d.rows.first().map(|r| r.0.number))?;
    }
    if kind != "affine" {
        stray("gen", d.vectors.first().map(|r| r.0))?;
    }
    if kind != "fp" {
        stray("rel", d.relations.first().map(|r| r.0))?;
    }
    if kind != "builtin" && !d.params.is_empty() {
        return Err(here(kind_line, format!("`param` does not apply to kind {kind}")));
    }
    let body = match kind.as_str() {
        "cayley" => {
            let Some(elements) = d.elements else { return Err(here(kind_line, "missing `elements`".into())) };
            let n = elements.len();
            let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
            for (line, entries) in &d.rows {
                let resolve = |tok: usize, text: &str| -> Result<usize, SyntaxError> {
                    elements
                        .iter()
                        .position(|l| l == text)
                        .or_else(|| text.parse::<usize>().ok().filter(|&i| i < n))
                        .ok_or_else(|| line.err(tok, format!("unknown element `{text}`")))
                };
                let i = resolve(1, line.tokens[1].text)?;
                if rows[i].is_some() {
                    return Err(line.err(1, format!("duplicate row {i}")));
                }
                if entries.len() != n {
                    return Err(line.end_err(format!("row {i} has {} entries, expected {n}", entries.len())));
                }
                let row = entries.iter().enumerate().map(|(j, e)| resolve(j + 3, e)).collect::<Result<_, _>>()?;
                rows[i] = Some(row);
            }
            let rows: Vec<Vec<usize>> = rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| r.ok_or_else(|| here(kind_line, format!("missing row {i}"))))
                .collect::<Result<_, _>>()?;
            Body::Cayley { elements, rows }
        }
        "affine" => {
            let Some(dim) = d.dim else { return Err(here(kind_line, "missing `dim`".into())) };
            for (line, v) in &d.vectors {
                if v.len() != dim {
                    return Err(here(*line, format!("generator has {} entries, expected {dim}", v.len())));
                }
            }
            Body::Affine { dim, gens: d.vectors.into_iter().map(|(_, v)| v).collect() }
        }
        "fp" => {
            let Some(gens) = d.gens else { return Err(here(kind_line, "missing `gens`".into())) };
            for (line, u, v) in &d.relations {
                if u.len() != gens || v.len() != gens {
                    return Err(here(*line, format!("relation sides must have {gens} entries")));
                }
            }
            Body::Fp { gens, relations: d.relations.into_iter().map(|(_, u, v)| (u, v)).collect() }
        }
        "builtin" => {
            let Some(name) = d.builtin else { return Err(here(kind_line, "missing `name`".into())) };
            Body::Builtin { name, params: d.params }
        }
        _ => {
            let (Some(left), Some(right)) = (d.left, d.right) else {
                return Err(here(kind_line, "a product needs `left { .. }` and `right { .. }`".into()));
            };
            Body::Product { left: Box::new(left), right: Box::new(right) }
        }
    };
    Ok(Presentation { name: d.name, body })
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Presentation, SyntaxError> {
        let mut p = Parser { lines: tokenize(text), pos: 0 };
        if p.lines.is_empty() {
            return Err(SyntaxError { line: 1, column: 1, message: "empty presentation".into() });
        }
        p.block(None)
    }

    /// Builds the monoid; Cayley tables are checked against the axioms.
    pub fn build(&self, bounds: Bounds) -> Result<MonoidValue, embedkit::Error> {
        let named = |default: String| self.name.clone().unwrap_or(default);
        Ok(match &self.body {
            Body::Cayley { elements, rows } => MonoidValue::new(
                Cayley::new(named("cayley".into()), elements.clone(), rows.clone())?.with_bounds(bounds),
            ),
            Body::Affine { dim, gens } => {
                MonoidValue::new(Affine::with_generators(named(format!("affine({dim})")), *dim, gens.clone())?.with_bounds(bounds))
            }
            Body::Fp { gens, relations } => {
                MonoidValue::new(Presented::new(named(format!("fp({gens})")), *gens, relations.clone(), bounds)?)
            }
            Body::Builtin { name, params } => builtin_with_bounds(name, params, bounds)?,
            Body::Product { left, right } => product(left.build(bounds)?, right.build(bounds)?),
        })
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        let pad = " ".repeat(indent);
        let join = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        if let Some(name) = &self.name {
            writeln!(f, "{pad}monoid {name}")?;
        }
        writeln!(f, "{pad}kind {}", self.body.kind())?;
        match &self.body {
            Body::Cayley { elements, rows } => {
                writeln!(f, "{pad}elements {}", elements.join(" "))?;
                for (i, row) in rows.iter().enumerate() {
                    let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
                    writeln!(f, "{pad}row {i}: {}", entries.join(" "))?;
                }
            }
            Body::Affine { dim, gens } => {
                writeln!(f, "{pad}dim {dim}")?;
                for g in gens {
                    writeln!(f, "{pad}gen {}", join(g))?;
                }
            }
            Body::Fp { gens, relations } => {
                writeln!(f, "{pad}gens {gens}")?;
                for (u, v) in relations {
                    writeln!(f, "{pad}rel {} -> {}", join(u), join(v))?;
                }
            }
            Body::Builtin { name, params } => {
                writeln!(f, "{pad}name {name}")?;
                for p in params {
                    writeln!(f, "{pad}param {p}")?;
                }
            }
            Body::Product { left, right } => {
                writeln!(f, "{pad}left {{")?;
                left.write(f, indent + 2)?;
                writeln!(f, "{pad}}}")?;
                writeln!(f, "{pad}right {{")?;
                right.write(f, indent + 2)?;
                writeln!(f, "{pad}}}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Parses and builds in one step.
pub fn parse_presentation(text: &str, bounds: Bounds) -> Result<MonoidValue, ParseError> {
    Ok(Presentation::parse(text)?.build(bounds)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_dispatch() {
        let m = parse_presentation("monoid T3\nkind builtin\nname truncated\nparam 3\n", Bounds::default()).unwrap();
        assert_eq!(m.cardinality(), Some(4));
    }

    #[test]
    fn cayley_by_labels() {
        let text = "kind cayley\nelements e a b\nrow e: e a b\nrow a: a b e\nrow b: b e a\n";
        let m = parse_presentation(text, Bounds::default()).unwrap();
        assert!(m.flags().is_group.is_true());
    }

    #[test]
    fn reports_positions() {
        let err = Presentation::parse("kind affine\ndim 2\ngen 1 x\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 7));
        let err = Presentation::parse("kind cayley\nelements 0 1\nrow 0: 0 1\nrow 1 1 0\n").unwrap_err();
        assert_eq!(err.line, 4);
        let err = Presentation::parse("kind product\nleft {\nkind builtin\nname flat\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 6));
        let err = Presentation::parse("kind fp\ngens 1\nrel 1 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = Presentation::parse("kind fp\ndim 1\n").unwrap_err();
        assert!(err.message.contains("does not apply"), "{err}");
    }

    #[test]
    fn nested_products() {
        let text = "monoid P\nkind product\nleft {\n  kind builtin\n  name affine\n  param 1\n}\nright {\n  kind builtin\n  name cyclic\n  param 2\n}\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(p.build(Bounds::default()).unwrap().name(), "product(N, cyclic(2))");
    }
}
