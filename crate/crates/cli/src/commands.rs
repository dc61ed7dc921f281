use std::fs;
use std::io::Write;
use std::path::PathBuf;

use dccasp::bench::{self, BenchQuery, BenchSpec, Family};
use dccasp::engine::FnObserver;
use dccasp::oracle::OracleError;
use dccasp::parser::Unit;
use dccasp::{enumerate_answer_sets, parse_query, parse_unit, Analysis, Mode, SolveConfig, SolveError, Solver};

use crate::output;
use crate::{Failure, Format};

type Outcome = Result<u8, Failure>;

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("cannot write output: {e}"))
}

/// Reads and concatenates the files. Each file is parsed on its own first
/// so that errors point into the right file.
fn load(paths: &[PathBuf]) -> Result<Unit, Failure> {
    let mut text = String::new();
    for path in paths {
        let src = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        parse_unit(&src).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
        text.push_str(&src);
        if !src.ends_with('\n') {
            text.push('\n');
        }
    }
    parse_unit(&text).map_err(|e| Failure::Parse(e.to_string()))
}

pub fn analyze(paths: &[PathBuf], format: Format, out: &mut impl Write) -> Outcome {
    let unit = load(paths)?;
    let report = Analysis::new(&unit.program).report();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()),
        _ => write!(out, "{report}"),
    }
    .map_err(io)?;
    Ok(0)
}

pub struct SolveOptions {
    pub query: Option<String>,
    pub mode: Mode,
    pub max_answers: usize,
    pub step_limit: Option<u64>,
    pub trace: bool,
    pub positives_only: bool,
}

pub fn solve(paths: &[PathBuf], opts: &SolveOptions, format: Format, out: &mut impl Write) -> Outcome {
    let Unit { mut program, query } = load(paths)?;
    let query = match &opts.query {
        Some(text) => parse_query(&mut program, text).map_err(|e| Failure::Parse(format!("query: {e}")))?,
        None => query.ok_or_else(|| Failure::Usage("no query: pass --query or add a `?-` directive".into()))?,
    };
    let analysis = Analysis::new(&program);
    let mut cfg = SolveConfig::new(opts.mode).with_max_answers(opts.max_answers);
    cfg.step_limit = opts.step_limit;

    let result = if opts.trace {
        let mut stderr = std::io::stderr().lock();
        let observer = FnObserver(|event: &dccasp::Event| {
            let line = output::trace_line(event, &program.atoms, &analysis.checks, format);
            let _ = writeln!(stderr, "{line}");
        });
        Solver::with_observer(&analysis.checks, &analysis.partition, &query, cfg, observer).solve()
    } else {
        Solver::new(&analysis.checks, &analysis.partition, &query, cfg).solve()
    };
    let answers = match result {
        Ok(answers) => answers,
        Err(e @ SolveError::StepLimitExceeded { .. }) => return Err(Failure::Limit(e.to_string())),
    };

    match format {
        Format::Json => {
            let doc = output::answers_json(&answers, &program.atoms, opts.positives_only);
            writeln!(out, "{doc}").map_err(io)?;
        }
        _ => {
            for answer in &answers {
                writeln!(out, "{}", answer.render(&program.atoms, opts.positives_only)).map_err(io)?;
            }
        }
    }
    if answers.is_empty() {
        eprintln!("no partial answer set");
        Ok(1)
    } else {
        Ok(0)
    }
}

pub fn enumerate(paths: &[PathBuf], atom_limit: usize, format: Format, out: &mut impl Write) -> Outcome {
    let unit = load(paths)?;
    if unit.query.is_some() {
        return Err(Failure::Usage("enumerate does not take a query".into()));
    }
    let program = unit.program;
    let sets = enumerate_answer_sets(&program, atom_limit).map_err(|e| match e {
        OracleError::LimitExceeded { .. } => Failure::Limit(e.to_string()),
        other => Failure::Usage(other.to_string()),
    })?;
    match format {
        Format::Json => {
            let doc: Vec<Vec<String>> = sets.iter().map(|s| s.names(&program)).collect();
            writeln!(out, "{}", serde_json::to_string(&doc).unwrap()).map_err(io)?;
        }
        _ => {
            for set in &sets {
                writeln!(out, "{}", set.render(&program)).map_err(io)?;
            }
        }
    }
    Ok(0)
}

pub fn bench(
    family: &str,
    queries: &[String],
    modes: Vec<Mode>,
    repetitions: usize,
    step_limit: Option<u64>,
    format: Format,
    out: &mut impl Write,
) -> Outcome {
    let family: Family = family
        .parse()
        .map_err(|e: bench::FamilyError| Failure::Usage(e.to_string()))?;
    let queries = queries
        .iter()
        .map(|q| match q.split_once('=') {
            Some((name, atom)) => BenchQuery {
                name: name.to_owned(),
                atom: atom.to_owned(),
            },
            None => BenchQuery {
                name: q.clone(),
                atom: q.clone(),
            },
        })
        .collect();
    let mut spec = BenchSpec::new(family);
    spec.queries = queries;
    spec.modes = modes;
    spec.repetitions = repetitions;
    if step_limit.is_some() {
        spec.step_limit = step_limit;
    }
    let rows = bench::run_bench(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    match format {
        Format::Text => write!(out, "{}", bench::render_table(&rows)).map_err(io)?,
        Format::Json => writeln!(out, "{}", bench::to_json(&rows)).map_err(io)?,
        Format::Csv => bench::write_csv(&rows, &mut *out).map_err(|e| Failure::Usage(e.to_string()))?,
    }
    Ok(0)
}
