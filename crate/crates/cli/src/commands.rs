use std::io::Read;

use embedkit::diagram::{
    apply_path, categories_of, enumerate_paths, full_diagram_check, parse_path, path_end, render_path, typed_ends,
    CategoryId, DiagramOptions, PathVerdict, TYPING_TABLE,
};
use embedkit::embeddings::theorems::{check_theorem, Outcome, Theorem, Verdict};
use embedkit::embeddings::{check_elements, sample_pairs};
use embedkit::predicates::{
    check_distinct_multiples, is_cancellative, is_divisible, is_torsion_free, is_uniquely_divisible, render_ud,
    MultiplesReport,
};
use embedkit::{Decision, Error, MonoidValue, TriState};
use sha2::{Digest, Sha256};

use crate::presentation::{ParseError, Presentation};
use crate::report::{Finding, Report, ReportBounds, Status};
use crate::{Cli, Command};

/// Problems with the invocation or its input (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("--input is required for this command")]
    MissingInput,
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Usage(e.to_string())
    }
}

const MAX_PATH_LEN: usize = 6;

fn read_input(cli: &Cli) -> Result<(MonoidValue, String), InputError> {
    let path = cli.input.as_ref().ok_or(InputError::MissingInput)?;
    let mut bytes = Vec::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    res.map_err(|source| InputError::Read { path: path.display().to_string(), source })?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| InputError::Usage("input is not UTF-8".into()))?;
    let pres = Presentation::parse(&text).map_err(ParseError::from)?;
    let m = pres.build(cli.bounds()).map_err(ParseError::from)?;
    Ok((m, digest))
}

fn command_line(cmd: &Command) -> String {
    match cmd {
        Command::Info => "info".into(),
        Command::Apply { path } => format!("apply --path {path}"),
        Command::Check { theorem, path, pairs } => match path {
            Some(p) => format!("check --theorem {theorem} --path {p} --pairs {pairs}"),
            None => format!("check --theorem {theorem} --pairs {pairs}"),
        },
        Command::Paths { from, to, max_len } => format!("paths --from {from} --to {to} --max-len {max_len}"),
        Command::Diagram { max_len, expr_size, pairs } => {
            format!("diagram --max-len {max_len} --expr-size {expr_size} --pairs {pairs}")
        }
    }
}

fn tri_finding(check: &str, t: TriState) -> Finding {
    match t {
        TriState::True => Finding::new(check, Status::Info, "holds"),
        TriState::False => Finding::new(check, Status::Info, "fails"),
        TriState::Unknown(b) => Finding::new(check, Status::Unknown, format!("undecided at bound {b}")),
    }
}

fn decision_finding<W>(check: &str, d: Decision<W>, witness: impl Fn(&W) -> Vec<String>) -> Finding {
    match d {
        Decision::True => Finding::new(check, Status::Info, "holds"),
        Decision::False(w) => Finding::new(check, Status::Info, "fails").with_witnesses(witness(&w)),
        Decision::Unknown(b) => Finding::new(check, Status::Unknown, format!("undecided at bound {b}")),
    }
}

fn size(m: &MonoidValue) -> String {
    m.cardinality().map_or("infinite".into(), |n| n.to_string())
}

fn category_list(m: &MonoidValue) -> String {
    categories_of(&m.flags()).iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn info(m: &MonoidValue, bound: usize) -> Vec<Finding> {
    let r = |e: &embedkit::Element| m.render(e);
    let gens: Vec<String> = m.generators().iter().map(r).collect();
    let mut out = vec![
        Finding::new("backend", Status::Info, format!("{:?}", m.backend()).to_lowercase()),
        Finding::new("size", Status::Info, size(m)),
        Finding::new("generators", Status::Info, format!("[{}]", gens.join(", "))),
        decision_finding("cancellative", is_cancellative(&**m, bound), |w| vec![r(&w.x), r(&w.y), r(&w.z)]),
        tri_finding("group", m.flags().is_group),
        decision_finding("divisible", is_divisible(&**m, bound), |w| vec![r(&w.x), w.n.to_string()]),
        decision_finding("torsion-free", is_torsion_free(&**m, bound), |w| vec![render_ud(&**m, w)]),
        decision_finding("uniquely divisible", is_uniquely_divisible(&**m, bound), |w| vec![render_ud(&**m, w)]),
        Finding::new("categories", Status::Info, category_list(m)),
    ];
    if let Some(g) = m.grothendieck() {
        out.push(Finding::new("grothendieck group", Status::Info, g.to_string()));
    }
    out
}

/// Construction errors: type errors are input errors, bound exhaustion is
/// undecided, anything else is a failed precondition.
fn construction_finding(e: Error) -> Result<Finding, InputError> {
    match e.root() {
        Error::PathType { .. } => Err(InputError::Usage(e.to_string())),
        _ if e.is_bound_exhausted() => Ok(Finding::new("construction", Status::Unknown, e.to_string())),
        Error::NotCancellative { x, y, z } => Ok(Finding::new("construction", Status::Fail, e.to_string())
            .with_witnesses(vec![x.to_string(), y.to_string(), z.to_string()])),
        Error::NotAnEquivalence { a, b, c } => Ok(Finding::new("construction", Status::Fail, e.to_string())
            .with_witnesses(vec![a.to_string(), b.to_string(), c.to_string()])),
        _ => Ok(Finding::new("construction", Status::Fail, e.to_string())),
    }
}

fn apply(cli: &Cli, x: &MonoidValue, path_text: &str) -> Result<Vec<Finding>, InputError> {
    let path = parse_path(path_text)?;
    let (t, map) = match apply_path(x, &path, cli.mode) {
        Ok(r) => r,
        Err(e) => return Ok(vec![construction_finding(e)?]),
    };
    let typing: Vec<String> = typed_ends(x, &path).iter().map(|(s, e)| format!("{s} -> {e}")).collect();
    let mut out = vec![
        Finding::new("typing", Status::Info, format!("{}: {}", render_path(&path), typing.join(", "))),
        Finding::new("target", Status::Info, t.name()),
        Finding::new("size", Status::Info, size(&t)),
        Finding::new("categories", Status::Info, category_list(&t)),
    ];
    let group = t.flags().is_group.is_true();
    let structure = match (t.cardinality(), t.grothendieck()) {
        (Some(1), _) => Some(if group { "trivial group".to_string() } else { "trivial".to_string() }),
        (_, Some(g)) if group => Some(format!("group {g}")),
        (_, Some(g)) => Some(format!("Grothendieck group {g}")),
        _ => None,
    };
    if let Some(s) = structure {
        out.push(Finding::new("structure", Status::Info, s));
    }
    let pairs = sample_pairs(x, 500, cli.seed);
    out.push(match map.check_injective(&pairs) {
        Decision::True => Finding::new("injective", Status::Pass, format!("{} pairs", pairs.len())),
        Decision::False((a, b)) => Finding::new("injective", Status::Finding, "two elements share an image")
            .with_witnesses(vec![x.render(&a), x.render(&b)]),
        Decision::Unknown(k) => Finding::new("injective", Status::Unknown, format!("undecided at bound {k}")),
    });
    let images: Vec<String> = check_elements(x)
        .iter()
        .take(8)
        .map(|e| match map.apply(e) {
            Ok(v) => format!("{} -> {}", x.render(e), t.render(&v)),
            Err(err) => format!("{} -> error: {err}", x.render(e)),
        })
        .collect();
    out.push(Finding::new("images", Status::Info, format!("{} sample element(s)", images.len())).with_witnesses(images));
    Ok(out)
}

fn parse_theorem(s: &str) -> Result<Option<Theorem>, InputError> {
    Ok(Some(match s {
        "4.1" => Theorem::Regularization,
        "4.2" => Theorem::FormalDifference,
        "4.3" => Theorem::DivisibleHull,
        "4.4" => Theorem::UniqueQuotient,
        "4.5" => Theorem::Modulation,
        "p2.1" | "P2.1" => return Ok(None),
        other => return Err(InputError::Usage(format!("unknown theorem `{other}` (expected 4.1 to 4.5 or p2.1)"))),
    }))
}

fn check(cli: &Cli, x: &MonoidValue, theorem: &str, path: Option<&str>, pairs: usize) -> Result<(String, Vec<Finding>), InputError> {
    let which = parse_theorem(theorem)?;
    let x = match path {
        None => x.clone(),
        Some(p) => match apply_path(x, &parse_path(p)?, cli.mode) {
            Ok((t, _)) => t,
            Err(e) => return Ok((x.name(), vec![construction_finding(e)?])),
        },
    };
    let Some(which) = which else {
        let f = match check_distinct_multiples(&*x, cli.bound) {
            MultiplesReport::Holds { bound } => Finding::new(
                "distinct multiples",
                Status::Pass,
                format!("no x != 0 with n1*x = n2*x for 2 <= n1 < n2 <= {bound}"),
            ),
            MultiplesReport::CounterexampleFound { x: e, n1, n2 } => Finding::new(
                "distinct multiples",
                Status::Fail,
                format!("{n1}*{0} = {n2}*{0}", x.render(&e)),
            )
            .with_witnesses(vec![x.render(&e), n1.to_string(), n2.to_string()]),
            MultiplesReport::Inapplicable(why) => Finding::new("distinct multiples", Status::Inapplicable, why),
            MultiplesReport::Inconclusive { bound } => {
                Finding::new("distinct multiples", Status::Unknown, format!("undecided at bound {bound}"))
            }
        };
        return Ok((x.name(), vec![f]));
    };
    let report = check_theorem(which, &x, cli.mode, pairs, cli.seed);
    let mut out: Vec<Finding> = report
        .checks
        .iter()
        .map(|c| {
            let status = match c.outcome {
                Outcome::Pass => Status::Pass,
                Outcome::Fail => Status::Fail,
                Outcome::Finding => Status::Finding,
                Outcome::Unknown => Status::Unknown,
            };
            Finding::new(c.name.clone(), status, c.detail.clone())
        })
        .collect();
    if let Verdict::Inapplicable(why) = &report.verdict {
        out.push(Finding::new("hypothesis", Status::Inapplicable, why.clone()));
    }
    Ok((x.name(), out))
}

fn paths(from: &str, to: &str, max_len: usize) -> Result<Vec<Finding>, InputError> {
    let (start, end): (CategoryId, CategoryId) = (from.parse()?, to.parse()?);
    if max_len > MAX_PATH_LEN {
        return Err(InputError::Usage(format!("--max-len is at most {MAX_PATH_LEN}")));
    }
    let found = enumerate_paths(start, end, max_len);
    let mut out = vec![Finding::new("paths", Status::Info, format!("{} path(s) from {start} to {end}", found.len()))];
    for p in &found {
        let mut at = start;
        let mut steps = vec![start.to_string()];
        for k in p {
            at = path_end(at, &[*k]).expect("enumerated paths are typed");
            steps.push(at.to_string());
        }
        out.push(Finding::new(render_path(p), Status::Info, steps.join(" -> ")));
    }
    Ok(out)
}

fn typing_note() -> String {
    let arrows: Vec<String> =
        TYPING_TABLE.iter().map(|a| format!("{}: {} -> {}", a.kind, a.source, a.target)).collect();
    format!("arrows ({}): {}; no identity or forgetful arrows", arrows.len(), arrows.join(", "))
}

fn diagram(cli: &Cli, x: &MonoidValue, max_len: usize, expr_size: usize, pairs: usize) -> Result<Vec<Finding>, InputError> {
    if max_len > MAX_PATH_LEN {
        return Err(InputError::Usage(format!("--max-len is at most {MAX_PATH_LEN}")));
    }
    let opts = DiagramOptions { max_len, expr_size, pair_budget: pairs, mode: cli.mode, seed: cli.seed };
    let reports = full_diagram_check(x, &opts);
    let mut out = vec![Finding::new(
        "comparisons",
        Status::Info,
        format!("{} path pair(s) from {}", reports.len(), category_list(x)),
    )];
    for r in reports {
        let name = format!("[{}] vs [{}] -> {}", render_path(&r.path_a), render_path(&r.path_b), r.end);
        let counts = format!("{} expressions, {} pairs", r.expressions, r.pairs);
        out.push(match r.verdict {
            PathVerdict::Commute => Finding::new(name, Status::Pass, format!("commute ({counts})")),
            PathVerdict::Diverge { left, right, verdict_a, verdict_b } => Finding::new(
                name,
                Status::Fail,
                format!("diverge: {verdict_a:?} on the left path, {verdict_b:?} on the right ({counts})"),
            )
            .with_witnesses(vec![left.to_string(), right.to_string()]),
            PathVerdict::Inconclusive { unknown } => {
                Finding::new(name, Status::Unknown, format!("{unknown} undecided ({counts})"))
            }
            PathVerdict::Failed(e) if e.is_bound_exhausted() => Finding::new(name, Status::Unknown, e.to_string()),
            PathVerdict::Failed(e) => Finding::new(name, Status::Inapplicable, e.to_string()),
        });
    }
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<Report, InputError> {
    let b = cli.bounds();
    let mut report = Report {
        tool: "embedkit".into(),
        version: crate::report::VERSION.into(),
        command: command_line(&cli.command),
        input_sha256: None,
        monoid: None,
        mode: cli.mode.to_string(),
        bounds: ReportBounds { search: b.search, rewrite_states: b.rewrite_states },
        seed: cli.seed,
        notes: Vec::new(),
        findings: Vec::new(),
        status: Status::Pass,
        exit_code: 0,
    };
    if let Command::Paths { from, to, max_len } = &cli.command {
        report.findings = paths(from, to, *max_len)?;
        report.notes.push(typing_note());
        report.conclude();
        return Ok(report);
    }
    let (x, digest) = read_input(cli)?;
    report.input_sha256 = Some(digest);
    report.monoid = Some(x.name());
    report.findings = match &cli.command {
        Command::Info => info(&x, cli.bound),
        Command::Apply { path } => apply(cli, &x, path)?,
        Command::Check { theorem, path, pairs } => {
            let (name, findings) = check(cli, &x, theorem, path.as_deref(), *pairs)?;
            if path.is_some() {
                report.notes.push(format!("checked on {name}"));
            }
            findings
        }
        Command::Diagram { max_len, expr_size, pairs } => {
            report.notes.push(typing_note());
            diagram(cli, &x, *max_len, *expr_size, *pairs)?
        }
        Command::Paths { .. } => unreachable!("handled above"),
    };
    report.conclude();
    Ok(report)
}
