//! Goal-directed answer set solving for ground normal programs, with
//! dynamic consistency checking.
//!
//! The pipeline is: [`parser`] turns text into a [`Program`]; [`analysis`]
//! finds odd loops over negation, compiles them into sub-checks and groups
//! the sub-checks into splitting sets; [`engine`] answers queries by
//! coinductive resolution, enforcing either every sub-check or only those
//! relevant to the partial answer set. [`oracle`] is an exhaustive
//! stable-model enumerator used as ground truth, and [`bench`] generates
//! program families and measures both modes.
//!
//! ```
//! use dccasp::{Analysis, Mode, SolveConfig, parse_program, parse_query, solve};
//!
//! let mut program = parse_program("a :- not b. b :- not a. x :- not x.").unwrap();
//! let query = parse_query(&mut program, "?- a.").unwrap();
//! let analysis = Analysis::new(&program);
//!
//! // The odd loop on `x` is unrelated to `a`, so dynamic checking ignores it.
//! let answers = solve(&analysis.checks, &analysis.partition, &query, SolveConfig::new(Mode::Dcc)).unwrap();
//! assert_eq!(answers[0].render(&program.atoms, false), "{ a, not b }");
//!
//! // Enforcing every check makes the program inconsistent.
//! let answers = solve(&analysis.checks, &analysis.partition, &query, SolveConfig::new(Mode::Full)).unwrap();
//! assert!(answers.is_empty());
//! ```

pub mod analysis;
pub mod ast;
pub mod bench;
pub mod engine;
pub mod oracle;
pub mod parser;
mod union_find;

pub use analysis::{Analysis, CheckId, CheckProgram, SplittingPartition, SubCheck};
pub use ast::{AtomId, Literal, Program, Query, Rule, RuleId};
pub use engine::{solve, solve_observed, Counters, Event, Mode, PartialAnswerSet, SolveConfig, SolveError, Solver};
pub use oracle::{enumerate_answer_sets, AnswerSet};
pub use parser::{parse_program, parse_query, parse_unit, ParseError};
