//! Program families with known splitting-set structure, and a harness that
//! solves them in both modes while counting sub-check invocations.
//!
//! The families are small combinatorial puzzles grounded directly into
//! rules. `pigeonhole` and `schur_like` state their requirements as
//! integrity constraints, which pulls all of their atoms into one splitting
//! set. `chain_puzzle` only has even loops, so it has no checks at all.
//! `concat` glues families together with disjoint atom prefixes.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::Analysis;
use crate::ast::{AtomId, Literal, Program, Query};
use crate::engine::{Counters, Mode, SolveConfig, SolveError, Solver};

/// A program generator with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `m` pigeons into `n` holes, at most one pigeon per hole.
    Pigeonhole {
        pigeons: u32,
        holes: u32,
    },
    /// Colour `1..=n` with `k` colours, no monochromatic `x + y = z`.
    SchurLike {
        colours: u32,
        n: u32,
    },
    /// `n` stages, each passed by one of two mutually exclusive moves.
    ChainPuzzle {
        n: u32,
    },
    Concat(Vec<Family>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    Unknown(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: &'static str, reason: String },
    #[error("malformed family spec `{0}`")]
    Syntax(String),
}

impl Family {
    fn validate(&self) -> Result<(), FamilyError> {
        let bad = |family, reason: &str| {
            Err(FamilyError::InvalidParams {
                family,
                reason: reason.to_owned(),
            })
        };
        match *self {
            Family::Pigeonhole { pigeons, holes } => {
                if pigeons == 0 || holes == 0 {
                    return bad("pigeonhole", "pigeons and holes must be positive");
                }
                if pigeons > holes {
                    return bad("pigeonhole", "more pigeons than holes has no answer set");
                }
            }
            Family::SchurLike { colours, n } => {
                if colours == 0 || n == 0 {
                    return bad("schur_like", "colours and n must be positive");
                }
                if n > schur_bound(colours) {
                    return bad("schur_like", "n exceeds the largest sum-free colourable range");
                }
            }
            Family::ChainPuzzle { n } => {
                if n == 0 {
                    return bad("chain_puzzle", "n must be positive");
                }
            }
            Family::Concat(ref parts) => {
                if parts.is_empty() {
                    return bad("concat", "needs at least one component");
                }
                for part in parts {
                    part.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Name of the query atom that asks for a full solution, before any
    /// concat prefix.
    fn query_atom(&self) -> Option<&'static str> {
        match self {
            Family::Pigeonhole { .. } => Some("solvep"),
            Family::SchurLike { .. } => Some("solves"),
            Family::ChainPuzzle { .. } => Some("solveh"),
            Family::Concat(_) => None,
        }
    }

    /// The default query list: one per component, named after its query
    /// atom, paired with the atom's name in the generated program.
    pub fn queries(&self) -> Vec<BenchQuery> {
        match self {
            Family::Concat(parts) => parts
                .iter()
                .enumerate()
                .flat_map(|(i, part)| {
                    part.queries().into_iter().map(move |q| BenchQuery {
                        name: q.name,
                        atom: format!("{}{}", component_prefix(i), q.atom),
                    })
                })
                .collect(),
            leaf => {
                let atom = leaf.query_atom().unwrap().to_owned();
                vec![BenchQuery {
                    name: atom.clone(),
                    atom,
                }]
            }
        }
    }

    /// Short label used in bench tables.
    pub fn label(&self) -> String {
        match self {
            Family::Pigeonhole { .. } => "pigeons".into(),
            Family::SchurLike { .. } => "schur".into(),
            Family::ChainPuzzle { .. } => "chain".into(),
            Family::Concat(parts) => parts.iter().map(Family::label).collect::<Vec<_>>().join("-"),
        }
    }
}

/// Largest `n` for which `1..=n` splits into `k` sum-free classes, for the
/// values that are known.
fn schur_bound(k: u32) -> u32 {
    match k {
        1 => 1,
        2 => 4,
        3 => 13,
        4 => 44,
        _ => 160,
    }
}

fn component_prefix(i: usize) -> String {
    format!("c{i}_")
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Pigeonhole { pigeons, holes } => write!(f, "pigeonhole({pigeons},{holes})"),
            Family::SchurLike { colours, n } => write!(f, "schur_like({colours},{n})"),
            Family::ChainPuzzle { n } => write!(f, "chain_puzzle({n})"),
            Family::Concat(parts) => {
                f.write_str("concat(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    /// Parses `pigeonhole(3,3)`, `concat(pigeonhole(3,3),schur_like(2,4))`
    /// and so on. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (family, rest) = parse_family(&compact).ok_or_else(|| FamilyError::Syntax(s.to_owned()))??;
        if !rest.is_empty() {
            return Err(FamilyError::Syntax(s.to_owned()));
        }
        family.validate()?;
        Ok(family)
    }
}

type Parsed<'a> = Option<Result<(Family, &'a str), FamilyError>>;

fn parse_family(s: &str) -> Parsed<'_> {
    let open = s.find('(')?;
    let name = &s[..open];
    let mut rest = &s[open + 1..];
    if name == "concat" {
        let mut parts = Vec::new();
        loop {
            let (part, after) = match parse_family(rest)? {
                Ok(x) => x,
                Err(e) => return Some(Err(e)),
            };
            parts.push(part);
            if let Some(r) = after.strip_prefix(',') {
                rest = r;
            } else {
                rest = after.strip_prefix(')')?;
                return Some(Ok((Family::Concat(parts), rest)));
            }
        }
    }
    let close = rest.find(')')?;
    let args: Result<Vec<u32>, _> = rest[..close].split(',').map(str::parse).collect();
    let args = args.ok()?;
    rest = &rest[close + 1..];
    let family = match (name, args.as_slice()) {
        ("pigeonhole", &[pigeons, holes]) => Family::Pigeonhole { pigeons, holes },
        ("schur_like", &[colours, n]) => Family::SchurLike { colours, n },
        ("chain_puzzle", &[n]) => Family::ChainPuzzle { n },
        ("pigeonhole" | "schur_like" | "chain_puzzle", _) => return None,
        _ => return Some(Err(FamilyError::Unknown(name.to_owned()))),
    };
    Some(Ok((family, rest)))
}

struct Builder<'a> {
    program: &'a mut Program,
    prefix: String,
}

impl Builder<'_> {
    fn atom(&mut self, name: String) -> AtomId {
        self.program.atoms.intern(&format!("{}{name}", self.prefix))
    }

    fn pos(&mut self, name: String) -> Literal {
        Literal::pos(self.atom(name))
    }

    fn neg(&mut self, name: String) -> Literal {
        Literal::neg(self.atom(name))
    }

    fn rule(&mut self, head: Option<String>, body: Vec<Literal>) {
        let head = head.map(|h| self.atom(h));
        self.program.add_rule(head, body);
    }

    /// `x :- not nx. nx :- not x.`
    fn choice(&mut self, x: String) {
        let nx = format!("n{x}");
        let body = vec![self.neg(nx.clone())];
        self.rule(Some(x.clone()), body);
        let body = vec![self.neg(x)];
        self.rule(Some(nx), body);
    }
}

/// Grounds `family` into a program.
pub fn generate_family(family: &Family) -> Result<Program, FamilyError> {
    family.validate()?;
    let mut program = Program::new();
    emit(family, &mut program, String::new());
    Ok(program)
}

fn emit(family: &Family, program: &mut Program, prefix: String) {
    let mut b = Builder { program, prefix };
    match *family {
        Family::Pigeonhole { pigeons, holes } => {
            let at = |i, h| format!("in({i},{h})");
            for i in 1..=pigeons {
                for h in 1..=holes {
                    b.choice(at(i, h));
                    let body = vec![b.pos(at(i, h))];
                    b.rule(Some(format!("placed({i})")), body);
                }
                let body = vec![b.neg(format!("placed({i})"))];
                b.rule(None, body);
            }
            for h in 1..=holes {
                for i in 1..=pigeons {
                    for j in i + 1..=pigeons {
                        let body = vec![b.pos(at(i, h)), b.pos(at(j, h))];
                        b.rule(None, body);
                    }
                }
            }
            let body = (1..=pigeons).map(|i| b.pos(format!("placed({i})"))).collect();
            b.rule(Some("solvep".into()), body);
        }
        Family::SchurLike { colours, n } => {
            let col = |x, c| format!("col({x},{c})");
            for x in 1..=n {
                for c in 1..=colours {
                    b.choice(col(x, c));
                    let body = vec![b.pos(col(x, c))];
                    b.rule(Some(format!("coloured({x})")), body);
                }
                let body = vec![b.neg(format!("coloured({x})"))];
                b.rule(None, body);
                for c in 1..=colours {
                    for d in c + 1..=colours {
                        let body = vec![b.pos(col(x, c)), b.pos(col(x, d))];
                        b.rule(None, body);
                    }
                }
            }
            for x in 1..=n {
                for y in x..=n - x {
                    for c in 1..=colours {
                        let mut body = vec![b.pos(col(x, c))];
                        if y != x {
                            body.push(b.pos(col(y, c)));
                        }
                        body.push(b.pos(col(x + y, c)));
                        b.rule(None, body);
                    }
                }
            }
            let body = (1..=n).map(|x| b.pos(format!("coloured({x})"))).collect();
            b.rule(Some("solves".into()), body);
        }
        Family::ChainPuzzle { n } => {
            b.rule(Some("stage(0)".into()), vec![]);
            for i in 1..=n {
                let prev = format!("stage({})", i - 1);
                for mv in ["left", "right"] {
                    let body = vec![b.pos(prev.clone()), b.pos(format!("{mv}({i})"))];
                    b.rule(Some(format!("stage({i})")), body);
                }
                let body = vec![b.neg(format!("right({i})"))];
                b.rule(Some(format!("left({i})")), body);
                let body = vec![b.neg(format!("left({i})"))];
                b.rule(Some(format!("right({i})")), body);
            }
            let body = vec![b.pos(format!("stage({n})"))];
            b.rule(Some("solveh".into()), body);
        }
        Family::Concat(ref parts) => {
            let base = b.prefix.clone();
            for (i, part) in parts.iter().enumerate() {
                emit(part, b.program, format!("{base}{}", component_prefix(i)));
            }
        }
    }
}

/// A query by display name and atom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchQuery {
    pub name: String,
    pub atom: String,
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub family: Family,
    /// Empty means [`Family::queries`].
    pub queries: Vec<BenchQuery>,
    pub modes: Vec<Mode>,
    pub repetitions: usize,
    pub step_limit: Option<u64>,
}

impl BenchSpec {
    pub fn new(family: Family) -> Self {
        BenchSpec {
            family,
            queries: Vec::new(),
            modes: vec![Mode::Full, Mode::Dcc],
            repetitions: 5,
            step_limit: Some(50_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub problem: String,
    pub splitting_sets_total: usize,
    pub splitting_sets_touched: usize,
    pub query: String,
    pub mode: Mode,
    /// Median over the repetitions, in seconds.
    pub wall_time: f64,
    pub subcheck_invocations: u64,
    pub resolution_steps: u64,
    pub succeeded: bool,
    /// Set when the step limit cut the solve short.
    pub flagged: bool,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("query atom `{0}` does not occur in the generated program")]
    UnknownQuery(String),
    #[error("repetitions must be at least 1")]
    NoRepetitions,
}

/// Counters of a single solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measurement {
    pub counters: Counters,
    pub steps: u64,
    pub succeeded: bool,
    pub limited: bool,
}

/// Solves `query` once and records its counters.
pub fn measure(analysis: &Analysis, query: &Query, cfg: SolveConfig) -> Measurement {
    let mut solver = Solver::with_observer(&analysis.checks, &analysis.partition, query, cfg, Counters::default());
    let (succeeded, limited) = match solver.solve() {
        Ok(answers) => (!answers.is_empty(), false),
        Err(SolveError::StepLimitExceeded { .. }) => (false, true),
    };
    let steps = solver.steps();
    Measurement {
        counters: solver.into_observer(),
        steps,
        succeeded,
        limited,
    }
}

/// Generates the program and produces one row per (query, mode), rows
/// ordered by query then mode as listed in the spec. Repetitions run
/// sequentially and the reported time is their median.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>, BenchError> {
    if spec.repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    let program = generate_family(&spec.family)?;
    let analysis = Analysis::new(&program);
    let queries = if spec.queries.is_empty() {
        spec.family.queries()
    } else {
        spec.queries.clone()
    };
    let problem = spec.family.label();
    let total = analysis.partition.len();

    let mut rows = Vec::new();
    for q in &queries {
        let atom = program
            .atoms
            .lookup(&q.atom)
            .ok_or_else(|| BenchError::UnknownQuery(q.atom.clone()))?;
        let query = Query {
            goals: vec![Literal::pos(atom)],
        };
        for &mode in &spec.modes {
            let mut cfg = SolveConfig::new(mode);
            cfg.step_limit = spec.step_limit;
            let mut times = Vec::with_capacity(spec.repetitions);
            let mut last = None;
            for _ in 0..spec.repetitions {
                let start = Instant::now();
                let m = measure(&analysis, &query, cfg);
                times.push(start.elapsed().as_secs_f64());
                last = Some(m);
            }
            let m = last.unwrap();
            let touched = analysis
                .partition
                .sets()
                .iter()
                .enumerate()
                .filter(|&(set, _)| {
                    analysis
                        .partition
                        .checks_of_set(set)
                        .iter()
                        .any(|c| m.counters.checks_run.contains(c))
                })
                .count();
            rows.push(BenchRow {
                problem: problem.clone(),
                splitting_sets_total: total,
                splitting_sets_touched: touched,
                query: q.name.clone(),
                mode,
                wall_time: median(&mut times),
                subcheck_invocations: m.counters.check_runs,
                resolution_steps: m.steps,
                succeeded: m.succeeded,
                flagged: m.limited,
            });
        }
    }
    Ok(rows)
}

pub fn median(xs: &mut [f64]) -> f64 {
    assert!(!xs.is_empty());
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

const HEADERS: [&str; 9] = [
    "problem",
    "sets",
    "touched",
    "query",
    "mode",
    "time (s)",
    "subchecks",
    "steps",
    "result",
];

/// Aligned plain-text table.
pub fn render_table(rows: &[BenchRow]) -> String {
    let cells: Vec<[String; 9]> = rows
        .iter()
        .map(|r| {
            [
                r.problem.clone(),
                r.splitting_sets_total.to_string(),
                r.splitting_sets_touched.to_string(),
                r.query.clone(),
                r.mode.to_string(),
                format!("{:.6}", r.wall_time),
                r.subcheck_invocations.to_string(),
                r.resolution_steps.to_string(),
                match (r.flagged, r.succeeded) {
                    (true, _) => "limit".to_owned(),
                    (false, true) => "yes".to_owned(),
                    (false, false) => "no".to_owned(),
                },
            ]
        })
        .collect();
    let mut widths = HEADERS.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |items: &[&str]| {
        let mut s = String::new();
        for (i, (item, w)) in items.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            // Text columns flush left, numbers flush right.
            if matches!(i, 0 | 3 | 4 | 8) {
                s.push_str(&format!("{item:<w$}"));
            } else {
                s.push_str(&format!("{item:>w$}"));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&HEADERS);
    for row in &cells {
        line(&row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json(rows: &[BenchRow]) -> String {
    serde_json::to_string_pretty(rows).expect("bench rows serialize")
}
