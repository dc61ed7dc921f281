//! Goal-directed execution by co-SLD resolution with consistency checks.
//!
//! The solver is an explicit machine: a persistent goal list (the
//! continuation), a stack of choice points, and a trail that logs every
//! mutation of the solver state so that backtracking restores it exactly.
//!
//! The coinductive hypothesis set (CHS) holds at most one entry per atom,
//! so a literal and its complement can never coexist. Entries are either
//! ancestors (still being proved, on the current call stack) or completed.
//! A call that meets an ancestor of the same literal is ruled on by the
//! number of negation boundaries crossed since that ancestor:
//!
//! * positive literal: success iff the count is even and non-zero;
//! * negative literal: success iff the count is even (zero included).
//!
//! Negative literals are proved through compiled duals: `not a` requires
//! refuting every rule for `a`, and a rule is refuted by establishing the
//! complement of one of its body literals.
//!
//! In [`Mode::Full`] every sub-check runs after the query. In [`Mode::Dcc`]
//! a sub-check is queued when a literal of its splitting set enters the
//! CHS, and the queue is drained to a fixpoint after the query.

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{dcc_relevant_checks, CheckId, CheckProgram, SplittingPartition};
use crate::ast::{AtomId, AtomTable, Literal, Query};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every sub-check is appended to each query.
    Full,
    /// Only sub-checks whose splitting set the partial answer set touches.
    #[default]
    Dcc,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Dcc => "dcc",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Mode::Full),
            "dcc" => Ok(Mode::Dcc),
            other => Err(format!("unknown mode `{other}` (expected full or dcc)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub mode: Mode,
    /// Maximum number of resolution steps (calls); `None` is unbounded.
    pub step_limit: Option<u64>,
    /// Maximum number of partial answer sets to produce.
    pub max_answers: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: Mode::Dcc,
            step_limit: None,
            max_answers: 1,
        }
    }
}

impl SolveConfig {
    pub fn new(mode: Mode) -> Self {
        SolveConfig {
            mode,
            ..Default::default()
        }
    }

    pub fn with_max_answers(mut self, n: usize) -> Self {
        self.max_answers = n;
        self
    }

    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("step limit of {limit} resolution steps exceeded")]
    StepLimitExceeded { limit: u64 },
}

/// The literal set of one successful derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAnswerSet {
    pub positives: BTreeSet<AtomId>,
    pub negatives: BTreeSet<AtomId>,
    /// Every CHS literal in insertion order, followed by the satisfied
    /// sub-check heads.
    pub raw_chs: Vec<String>,
}

impl PartialAnswerSet {
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        let pos = self.positives.iter().map(|&a| Literal::pos(a));
        pos.chain(self.negatives.iter().map(|&a| Literal::neg(a)))
    }

    /// Positives then negatives, each sorted by name.
    pub fn sorted_names(&self, atoms: &AtomTable) -> (Vec<String>, Vec<String>) {
        let names = |set: &BTreeSet<AtomId>| {
            let mut v: Vec<String> = set.iter().map(|&a| atoms.name(a).to_owned()).collect();
            v.sort();
            v
        };
        (names(&self.positives), names(&self.negatives))
    }

    /// `{ a, b, not c }` with positives first.
    pub fn render(&self, atoms: &AtomTable, positives_only: bool) -> String {
        let (pos, neg) = self.sorted_names(atoms);
        let mut items = pos;
        if !positives_only {
            items.extend(neg.into_iter().map(|n| format!("not {n}")));
        }
        if items.is_empty() {
            "{ }".to_owned()
        } else {
            format!("{{ {} }}", items.join(", "))
        }
    }
}

/// How a call succeeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Via {
    /// Its derivation finished.
    Proved,
    /// It was already completed in the CHS.
    Memo,
    /// It met an ancestor call with an admissible number of negations.
    Coinduction,
    /// `not a` for an atom without rules.
    NoRules,
}

/// Resolution events, in the order they happen.
///
/// | event      | emitted when                                            |
/// |------------|---------------------------------------------------------|
/// | `call`     | a literal is selected as the current goal               |
/// | `succeed`  | a call succeeds (see [`Via`])                           |
/// | `fail`     | a call fails outright or exhausts its alternatives      |
/// | `activate` | a sub-check joins the dynamic check queue               |
/// | `check`    | a sub-check starts running (one per invocation)         |
/// | `answer`   | a derivation completes with every check satisfied       |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum Event {
    Call { literal: Literal, depth: u32 },
    Succeed { literal: Literal, via: Via },
    Fail { literal: Literal },
    Activate { check: CheckId },
    Check { check: CheckId },
    Answer,
}

pub trait Observer {
    fn event(&mut self, event: &Event);
}

/// Ignores every event.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoObserver;

impl Observer for NoObserver {
    #[inline]
    fn event(&mut self, _: &Event) {}
}

/// Adapts a closure into an [`Observer`].
pub struct FnObserver<F>(pub F);

impl<F: FnMut(&Event)> Observer for FnObserver<F> {
    fn event(&mut self, event: &Event) {
        (self.0)(event)
    }
}

/// Records every event.
impl Observer for Vec<Event> {
    fn event(&mut self, event: &Event) {
        self.push(*event);
    }
}

impl<O: Observer + ?Sized> Observer for &mut O {
    fn event(&mut self, event: &Event) {
        (**self).event(event)
    }
}

/// Event tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub calls: u64,
    pub successes: u64,
    pub failures: u64,
    pub activations: u64,
    pub check_runs: u64,
    pub answers: u64,
    /// Distinct sub-checks that ran at least once.
    pub checks_run: BTreeSet<CheckId>,
}

impl Observer for Counters {
    fn event(&mut self, event: &Event) {
        match *event {
            Event::Call { .. } => self.calls += 1,
            Event::Succeed { .. } => self.successes += 1,
            Event::Fail { .. } => self.failures += 1,
            Event::Activate { .. } => self.activations += 1,
            Event::Check { check } => {
                self.check_runs += 1;
                self.checks_run.insert(check);
            }
            Event::Answer => self.answers += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ancestor,
    Completed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChsEntry {
    pub literal: Literal,
    pub status: Status,
    pub neg_depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CheckStatus {
    Idle,
    Queued,
    Running,
    Done,
}

#[derive(Debug, Clone, Copy)]
enum TrailEntry {
    Inserted(AtomId),
    Completed(AtomId),
    QueuePushed,
    QueueAdvanced,
    CheckStatus { check: CheckId, prev: CheckStatus },
    Support(AtomId),
    SetActivated(usize),
}

/// Everything a choice point must be able to restore.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SolverState {
    chs: Vec<Option<ChsEntry>>,
    queue: Vec<CheckId>,
    queue_head: usize,
    checks: Vec<CheckStatus>,
    /// Positive support edges: atom -> positive body atoms of the rule
    /// proving it.
    support: Vec<Vec<AtomId>>,
    sets_active: Vec<bool>,
}

#[derive(Debug, Clone, Copy)]
enum Goal {
    /// `parent` is set when `lit` is a positive body literal of a rule
    /// being used to prove the positive atom `parent`.
    Call {
        lit: Literal,
        depth: u32,
        parent: Option<AtomId>,
    },
    Complete(Literal),
    /// Refute the dual rules of `atom` from index `pos` onward.
    Refute {
        atom: AtomId,
        pos: u32,
        depth: u32,
    },
    Check(CheckId),
    CheckDone(CheckId),
    Drain,
}

struct Frame {
    goal: Goal,
    next: Cont,
}

type Cont = Option<Rc<Frame>>;

fn push(goal: Goal, next: Cont) -> Cont {
    Some(Rc::new(Frame { goal, next }))
}

#[derive(Debug, Clone, Copy)]
enum Alternatives {
    Rules { atom: AtomId, depth: u32 },
    Dual { atom: AtomId, pos: u32, depth: u32 },
    Clauses { check: CheckId },
}

struct ChoicePoint {
    literal: Literal,
    alts: Alternatives,
    next: usize,
    trail_len: usize,
    cont: Cont,
}

/// One query's search. Produces partial answer sets one at a time.
pub struct Solver<'p, O: Observer = NoObserver> {
    cp: &'p CheckProgram,
    part: &'p SplittingPartition,
    cfg: SolveConfig,
    observer: O,
    state: SolverState,
    trail: Vec<TrailEntry>,
    choices: Vec<ChoicePoint>,
    initial: Option<Cont>,
    exhausted: bool,
    steps: u64,
    seen: Vec<u32>,
    epoch: u32,
}

impl<'p> Solver<'p, NoObserver> {
    pub fn new(cp: &'p CheckProgram, part: &'p SplittingPartition, query: &Query, cfg: SolveConfig) -> Self {
        Solver::with_observer(cp, part, query, cfg, NoObserver)
    }
}

impl<'p, O: Observer> Solver<'p, O> {
    pub fn with_observer(
        cp: &'p CheckProgram,
        part: &'p SplittingPartition,
        query: &Query,
        cfg: SolveConfig,
        observer: O,
    ) -> Self {
        let atoms = query
            .goals
            .iter()
            .map(|l| l.atom.index() + 1)
            .max()
            .unwrap_or(0)
            .max(cp.base.atom_count());

        let mut tail: Cont = match cfg.mode {
            Mode::Dcc => push(Goal::Drain, None),
            Mode::Full => cp.check_ids().rev().fold(None, |next, c| push(Goal::Check(c), next)),
        };
        for &lit in query.goals.iter().rev() {
            tail = push(
                Goal::Call {
                    lit,
                    depth: 0,
                    parent: None,
                },
                tail,
            );
        }

        Solver {
            cp,
            part,
            cfg,
            observer,
            state: SolverState {
                chs: vec![None; atoms],
                queue: Vec::new(),
                queue_head: 0,
                checks: vec![CheckStatus::Idle; cp.subchecks.len()],
                support: vec![Vec::new(); atoms],
                sets_active: vec![false; part.len()],
            },
            seen: vec![0; atoms],
            epoch: 0,
            trail: Vec::new(),
            choices: Vec::new(),
            initial: Some(tail),
            exhausted: false,
            steps: 0,
        }
    }

    /// Resolution steps taken so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn observer(&self) -> &O {
        &self.observer
    }

    pub fn into_observer(self) -> O {
        self.observer
    }

    /// The current CHS entry for `atom`, if any.
    pub fn chs_entry(&self, atom: AtomId) -> Option<ChsEntry> {
        self.state.chs.get(atom.index()).copied().flatten()
    }

    /// Searches for the next successful derivation.
    pub fn next_answer(&mut self) -> Result<Option<PartialAnswerSet>, SolveError> {
        if self.exhausted {
            return Ok(None);
        }
        let start = match self.initial.take() {
            Some(cont) => Some(cont),
            None => self.backtrack(),
        };
        let found = match start {
            Some(cont) => self.run(cont)?,
            None => false,
        };
        if !found {
            self.exhausted = true;
            return Ok(None);
        }
        self.observer.event(&Event::Answer);
        Ok(Some(self.answer()))
    }

    /// Collects up to `max_answers` partial answer sets.
    pub fn solve(&mut self) -> Result<Vec<PartialAnswerSet>, SolveError> {
        let mut out = Vec::new();
        while out.len() < self.cfg.max_answers {
            match self.next_answer()? {
                Some(a) => out.push(a),
                None => break,
            }
        }
        Ok(out)
    }

    fn answer(&self) -> PartialAnswerSet {
        let atoms = &self.cp.base.atoms;
        let name = |a: AtomId| {
            if a.index() < atoms.len() {
                atoms.name(a).to_owned()
            } else {
                format!("#{}", a.0)
            }
        };
        let mut positives = BTreeSet::new();
        let mut negatives = BTreeSet::new();
        let mut raw_chs = Vec::new();
        for entry in &self.trail {
            if let TrailEntry::Inserted(a) = *entry {
                let e = self.state.chs[a.index()].expect("inserted entries are live");
                if e.literal.positive {
                    positives.insert(a);
                    raw_chs.push(name(a));
                } else {
                    negatives.insert(a);
                    raw_chs.push(format!("not {}", name(a)));
                }
            }
        }
        for (c, status) in self.state.checks.iter().enumerate() {
            if *status == CheckStatus::Done {
                raw_chs.push(self.cp.subchecks[c].name.clone());
            }
        }
        PartialAnswerSet {
            positives,
            negatives,
            raw_chs,
        }
    }

    /// Runs goals until the continuation is empty (an answer) or the search
    /// space is exhausted.
    fn run(&mut self, mut cont: Cont) -> Result<bool, SolveError> {
        loop {
            let Some(frame) = cont else {
                return Ok(true);
            };
            let rest = frame.next.clone();
            let next = match frame.goal {
                Goal::Call { lit, depth, parent } => self.call(lit, depth, parent, rest)?,
                Goal::Complete(lit) => {
                    self.complete(lit);
                    self.observer.event(&Event::Succeed {
                        literal: lit,
                        via: Via::Proved,
                    });
                    Some(rest)
                }
                Goal::Refute { atom, pos, depth } => self.refute(atom, pos, depth, rest),
                Goal::Check(check) => self.check(check, rest),
                Goal::CheckDone(check) => {
                    self.set_check(check, CheckStatus::Done);
                    Some(rest)
                }
                Goal::Drain => Some(self.drain(rest)),
            };
            cont = match next {
                Some(c) => c,
                None => match self.backtrack() {
                    Some(c) => c,
                    None => return Ok(false),
                },
            };
        }
    }

    fn call(
        &mut self,
        lit: Literal,
        depth: u32,
        parent: Option<AtomId>,
        rest: Cont,
    ) -> Result<Option<Cont>, SolveError> {
        self.steps += 1;
        if let Some(limit) = self.cfg.step_limit {
            if self.steps > limit {
                return Err(SolveError::StepLimitExceeded { limit });
            }
        }
        self.observer.event(&Event::Call { literal: lit, depth });

        if let Some(entry) = self.state.chs[lit.atom.index()] {
            // A clash with the complement, or a circular positive support.
            let blocked = entry.literal != lit || parent.is_some_and(|x| !self.add_support(x, lit.atom));
            let ok = if blocked {
                false
            } else if entry.status == Status::Completed {
                self.observer.event(&Event::Succeed {
                    literal: lit,
                    via: Via::Memo,
                });
                return Ok(Some(rest));
            } else {
                coinductive_success(lit, entry.neg_depth, depth)
            };
            if ok {
                self.observer.event(&Event::Succeed {
                    literal: lit,
                    via: Via::Coinduction,
                });
                return Ok(Some(rest));
            }
            self.observer.event(&Event::Fail { literal: lit });
            return Ok(None);
        }

        self.insert(lit, depth);
        if let Some(x) = parent {
            self.add_support(x, lit.atom);
        }
        let atom = lit.atom;
        if lit.positive {
            if self.cp.rules_for(atom).is_empty() {
                self.observer.event(&Event::Fail { literal: lit });
                return Ok(None);
            }
            let cont = push(Goal::Complete(lit), rest);
            Ok(self.choose(lit, Alternatives::Rules { atom, depth }, cont))
        } else if self.cp.duals.of(atom).is_empty() {
            self.complete(lit);
            self.observer.event(&Event::Succeed {
                literal: lit,
                via: Via::NoRules,
            });
            Ok(Some(rest))
        } else {
            let cont = push(Goal::Complete(lit), rest);
            Ok(self.refute(atom, 0, depth, cont))
        }
    }

    fn refute(&mut self, atom: AtomId, pos: u32, depth: u32, rest: Cont) -> Option<Cont> {
        let duals = self.cp.duals.of(atom);
        let Some(rule) = duals.get(pos as usize) else {
            return Some(rest);
        };
        let lit = Literal::neg(atom);
        if rule.alternatives.is_empty() {
            // A fact cannot be refuted.
            self.observer.event(&Event::Fail { literal: lit });
            return None;
        }
        let cont = push(
            Goal::Refute {
                atom,
                pos: pos + 1,
                depth,
            },
            rest,
        );
        self.choose(lit, Alternatives::Dual { atom, pos, depth }, cont)
    }

    fn check(&mut self, check: CheckId, rest: Cont) -> Option<Cont> {
        self.observer.event(&Event::Check { check });
        let sub = self.cp.subcheck(check);
        if sub.clauses.is_empty() {
            return None;
        }
        let lit = sub.clauses[0];
        let cont = push(Goal::CheckDone(check), rest);
        self.choose(lit, Alternatives::Clauses { check }, cont)
    }

    fn drain(&mut self, rest: Cont) -> Cont {
        let s = &mut self.state;
        if s.queue_head == s.queue.len() {
            return rest;
        }
        let check = s.queue[s.queue_head];
        s.queue_head += 1;
        self.trail.push(TrailEntry::QueueAdvanced);
        self.set_check(check, CheckStatus::Running);
        push(Goal::Check(check), push(Goal::Drain, rest))
    }

    /// Pushes a choice point and enters its first alternative.
    fn choose(&mut self, literal: Literal, alts: Alternatives, cont: Cont) -> Option<Cont> {
        self.choices.push(ChoicePoint {
            literal,
            alts,
            next: 1,
            trail_len: self.trail.len(),
            cont: cont.clone(),
        });
        Some(self.alternative(alts, 0, cont))
    }

    fn alternative_count(&self, alts: Alternatives) -> usize {
        match alts {
            Alternatives::Rules { atom, .. } => self.cp.rules_for(atom).len(),
            Alternatives::Dual { atom, pos, .. } => self.cp.duals.of(atom)[pos as usize].alternatives.len(),
            Alternatives::Clauses { check } => self.cp.subcheck(check).clauses.len(),
        }
    }

    fn alternative(&self, alts: Alternatives, i: usize, cont: Cont) -> Cont {
        match alts {
            Alternatives::Rules { atom, depth } => {
                let rule = self.cp.base.rule(self.cp.rules_for(atom)[i]);
                rule.body.iter().rev().fold(cont, |next, &lit| {
                    let depth = depth + u32::from(lit.is_negative());
                    let parent = lit.positive.then_some(atom);
                    push(Goal::Call { lit, depth, parent }, next)
                })
            }
            Alternatives::Dual { atom, pos, depth } => {
                let lit = self.cp.duals.of(atom)[pos as usize].alternatives[i];
                let depth = depth + u32::from(lit.positive);
                push(
                    Goal::Call {
                        lit,
                        depth,
                        parent: None,
                    },
                    cont,
                )
            }
            Alternatives::Clauses { check } => {
                let lit = self.cp.subcheck(check).clauses[i];
                push(
                    Goal::Call {
                        lit,
                        depth: 0,
                        parent: None,
                    },
                    cont,
                )
            }
        }
    }

    /// Resumes the most recent choice point with an untried alternative,
    /// restoring the state it saw.
    fn backtrack(&mut self) -> Option<Cont> {
        while let Some(cp) = self.choices.last() {
            let (alts, i, trail_len, cont) = (cp.alts, cp.next, cp.trail_len, cp.cont.clone());
            if i < self.alternative_count(alts) {
                self.choices.last_mut().unwrap().next += 1;
                self.unwind(trail_len);
                return Some(self.alternative(alts, i, cont));
            }
            let literal = cp.literal;
            self.choices.pop();
            self.observer.event(&Event::Fail { literal });
        }
        self.unwind(0);
        None
    }

    fn unwind(&mut self, len: usize) {
        while self.trail.len() > len {
            match self.trail.pop().unwrap() {
                TrailEntry::Inserted(a) => self.state.chs[a.index()] = None,
                TrailEntry::Completed(a) => {
                    if let Some(e) = &mut self.state.chs[a.index()] {
                        e.status = Status::Ancestor;
                    }
                }
                TrailEntry::QueuePushed => {
                    self.state.queue.pop();
                }
                TrailEntry::QueueAdvanced => self.state.queue_head -= 1,
                TrailEntry::CheckStatus { check, prev } => self.state.checks[check.index()] = prev,
                TrailEntry::SetActivated(set) => self.state.sets_active[set] = false,
                TrailEntry::Support(a) => {
                    self.state.support[a.index()].pop();
                }
            }
        }
    }

    /// Records that `from` is supported by the positive atom `to`, unless
    /// that would make positive support circular.
    fn add_support(&mut self, from: AtomId, to: AtomId) -> bool {
        if self.supports(to, from) {
            return false;
        }
        self.state.support[from.index()].push(to);
        self.trail.push(TrailEntry::Support(from));
        true
    }

    /// Is `target` reachable from `from` along support edges?
    fn supports(&mut self, from: AtomId, target: AtomId) -> bool {
        if from == target {
            return true;
        }
        self.epoch += 1;
        let epoch = self.epoch;
        let mut stack = vec![from];
        self.seen[from.index()] = epoch;
        while let Some(a) = stack.pop() {
            for &b in &self.state.support[a.index()] {
                if b == target {
                    return true;
                }
                if self.seen[b.index()] != epoch {
                    self.seen[b.index()] = epoch;
                    stack.push(b);
                }
            }
        }
        false
    }

    fn insert(&mut self, lit: Literal, depth: u32) {
        let slot = &mut self.state.chs[lit.atom.index()];
        debug_assert!(slot.is_none(), "CHS already holds an entry for this atom");
        *slot = Some(ChsEntry {
            literal: lit,
            status: Status::Ancestor,
            neg_depth: depth,
        });
        self.trail.push(TrailEntry::Inserted(lit.atom));
        if self.cfg.mode == Mode::Dcc {
            self.activate_checks(lit);
        }
    }

    fn complete(&mut self, lit: Literal) {
        if let Some(e) = &mut self.state.chs[lit.atom.index()] {
            debug_assert_eq!(e.literal, lit);
            e.status = Status::Completed;
            self.trail.push(TrailEntry::Completed(lit.atom));
        }
    }

    /// Queues every idle sub-check of the splitting set containing `lit`.
    fn activate_checks(&mut self, lit: Literal) {
        // A set's checks are queued together, so once the set is active
        // there is nothing left to do until backtracking resets it.
        let Some(set) = self.part.set_of(lit.atom) else {
            return;
        };
        if self.state.sets_active[set] {
            return;
        }
        self.state.sets_active[set] = true;
        self.trail.push(TrailEntry::SetActivated(set));
        for &check in dcc_relevant_checks(self.part, lit) {
            if self.state.checks[check.index()] == CheckStatus::Idle {
                self.state.queue.push(check);
                self.trail.push(TrailEntry::QueuePushed);
                self.set_check(check, CheckStatus::Queued);
                self.observer.event(&Event::Activate { check });
            }
        }
    }

    fn set_check(&mut self, check: CheckId, status: CheckStatus) {
        let prev = std::mem::replace(&mut self.state.checks[check.index()], status);
        self.trail.push(TrailEntry::CheckStatus { check, prev });
    }
}

/// Parity gate for a call that meets its own ancestor `ancestor_depth`
/// negation boundaries below the root, from `depth`.
pub fn coinductive_success(lit: Literal, ancestor_depth: u32, depth: u32) -> bool {
    let d = depth - ancestor_depth;
    if lit.positive {
        d > 0 && d.is_multiple_of(2)
    } else {
        d.is_multiple_of(2)
    }
}

/// Solves `query` and returns up to `cfg.max_answers` partial answer sets.
pub fn solve(
    cp: &CheckProgram,
    part: &SplittingPartition,
    query: &Query,
    cfg: SolveConfig,
) -> Result<Vec<PartialAnswerSet>, SolveError> {
    Solver::new(cp, part, query, cfg).solve()
}

/// Like [`solve`], reporting every resolution event to `observer`.
pub fn solve_observed<O: Observer>(
    cp: &CheckProgram,
    part: &SplittingPartition,
    query: &Query,
    cfg: SolveConfig,
    observer: O,
) -> Result<Vec<PartialAnswerSet>, SolveError> {
    Solver::with_observer(cp, part, query, cfg, observer).solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Analysis;
    use crate::ast::Program;
    use crate::parser::{parse_program, parse_query};

    const THREE_CHECKS: &str = "p :- q.\nq :- not r, not p.\nr :- not p.\n:- q, r.\n";
    const GUARDED: &str = "a :- b.\nb :- not c.\nc :- not b.\np :- a.\nq :- b.\n:- p, q.\n";
    const MERGED: &str = ":- p, q.\nq :- not r, not q.\n";

    fn run(text: &str, query: &str, cfg: SolveConfig) -> (Program, Result<Vec<PartialAnswerSet>, SolveError>) {
        let mut p = parse_program(text).unwrap();
        let q = parse_query(&mut p, query).unwrap();
        let a = Analysis::new(&p);
        let r = solve(&a.checks, &a.partition, &q, cfg);
        (p, r)
    }

    fn rendered(text: &str, query: &str, cfg: SolveConfig) -> Vec<String> {
        let (p, r) = run(text, query, cfg);
        r.unwrap().iter().map(|a| a.render(&p.atoms, false)).collect()
    }

    fn dcc() -> SolveConfig {
        SolveConfig::new(Mode::Dcc)
    }

    fn full() -> SolveConfig {
        SolveConfig::new(Mode::Full)
    }

    #[test]
    fn guarded_choice() {
        assert!(rendered(GUARDED, "a", dcc()).is_empty());
        assert!(rendered(GUARDED, "a", full()).is_empty());
        assert_eq!(rendered(GUARDED, "c", dcc()), ["{ c, not a, not b, not p }"]);
        assert_eq!(rendered(GUARDED, "c", full()), ["{ c, not a, not b, not p }"]);
    }

    #[test]
    fn merged_set_fails() {
        assert!(rendered(MERGED, "not p", dcc()).is_empty());
        assert!(rendered(MERGED, "not p", full()).is_empty());
    }

    #[test]
    fn three_check_program_both_modes() {
        assert_eq!(rendered(THREE_CHECKS, "r", full()), ["{ r, not p, not q }"]);
        assert_eq!(rendered(THREE_CHECKS, "r", dcc()), ["{ r, not p, not q }"]);
        assert!(rendered(THREE_CHECKS, "q", full()).is_empty());
        assert!(rendered(THREE_CHECKS, "p", dcc()).is_empty());
    }

    #[test]
    fn even_loop_answers() {
        let prog = "p :- not q. q :- not p.";
        for cfg in [dcc(), full()] {
            assert_eq!(rendered(prog, "p", cfg), ["{ p, not q }"]);
            assert_eq!(rendered(prog, "q", cfg), ["{ q, not p }"]);
            assert_eq!(rendered(prog, "not p", cfg), ["{ q, not p }"]);
        }
    }

    #[test]
    fn positive_loop_is_unfounded() {
        assert!(rendered("p :- p.", "p", dcc()).is_empty());
        assert_eq!(rendered("p :- p.", "not p", dcc()), ["{ not p }"]);
        assert_eq!(rendered("p :- q. q :- p.", "not p", dcc()), ["{ not p, not q }"]);
    }

    #[test]
    fn memo_cannot_close_a_support_cycle() {
        // a0 gets completed coinductively through a1 while refuting a4; a1
        // must not then lean on that memo entry. The only model is {}.
        let prog = "a4 :- a1, not a2, not a0. :- a3, a4. :- a2.
                    a1 :- not a4, a0. a0 :- a1, not a4.";
        for cfg in [dcc(), full()] {
            assert!(rendered(prog, "a1", cfg).is_empty());
            assert!(rendered(prog, "a0", cfg).is_empty());
        }
    }

    #[test]
    fn odd_self_loop_fails_both_ways() {
        for cfg in [dcc(), full()] {
            assert!(rendered("p :- not p.", "p", cfg).is_empty());
            assert!(rendered("p :- not p.", "not p", cfg).is_empty());
        }
    }

    #[test]
    fn ruleless_negation_holds() {
        assert_eq!(rendered("a :- not r.", "not r", dcc()), ["{ not r }"]);
        // A query atom unknown to the program behaves as rule-less.
        assert_eq!(rendered("a.", "not zzz", dcc()), ["{ not zzz }"]);
        assert!(rendered("a.", "zzz", dcc()).is_empty());
    }

    #[test]
    fn inconsistency_elsewhere_is_ignored_under_dcc() {
        let kappa = "a :- not b. b :- not a. c :- a.";
        let with_olon = format!("{kappa} x :- not x.");
        assert_eq!(rendered(kappa, "c", dcc()), rendered(&with_olon, "c", dcc()));
        assert!(!rendered(kappa, "c", dcc()).is_empty());
        assert!(rendered(&with_olon, "c", full()).is_empty());
    }

    #[test]
    fn enumerates_on_backtracking() {
        let prog = "a :- not b. b :- not a. c :- a. c :- b.";
        let cfg = dcc().with_max_answers(10);
        assert_eq!(rendered(prog, "c", cfg), ["{ a, c, not b }", "{ b, c, not a }"]);
    }

    #[test]
    fn step_limit_is_an_error() {
        let (_, r) = run("a :- b. b :- c. c.", "a", dcc().with_step_limit(2));
        assert_eq!(r.unwrap_err(), SolveError::StepLimitExceeded { limit: 2 });
        let (_, r) = run("a :- b. b :- c. c.", "a", dcc().with_step_limit(3));
        assert_eq!(r.unwrap().len(), 1);
    }

    #[test]
    fn coinduction_gate() {
        let p = Literal::pos(AtomId(0));
        assert!(!coinductive_success(p, 0, 0));
        assert!(!coinductive_success(p, 0, 1));
        assert!(coinductive_success(p, 1, 3));
        let n = p.complement();
        assert!(coinductive_success(n, 0, 0));
        assert!(!coinductive_success(n, 2, 3));
        assert!(coinductive_success(n, 2, 4));
    }

    #[test]
    fn activation_and_check_events() {
        let mut p = parse_program(GUARDED).unwrap();
        let q = parse_query(&mut p, "c").unwrap();
        let a = Analysis::new(&p);
        let mut events: Vec<Event> = Vec::new();
        solve_observed(&a.checks, &a.partition, &q, dcc(), &mut events).unwrap();
        let activations: Vec<_> = events
            .iter()
            .filter_map(|e| match e {
                Event::Activate { check } => Some(*check),
                _ => None,
            })
            .collect();
        assert_eq!(activations, [CheckId(0)]);
        // Activation happens when `c` enters the CHS, before anything else.
        assert!(matches!(events[0], Event::Call { .. }));
        assert!(matches!(events[1], Event::Activate { .. }));
        assert!(events.contains(&Event::Check { check: CheckId(0) }));
        assert_eq!(events.last(), Some(&Event::Answer));
    }

    #[test]
    fn olon_free_programs_never_touch_the_queue() {
        let mut p = parse_program("a :- not b. b :- not a. c :- a.").unwrap();
        let q = parse_query(&mut p, "c").unwrap();
        let a = Analysis::new(&p);
        let mut counters = Counters::default();
        solve_observed(&a.checks, &a.partition, &q, dcc(), &mut counters).unwrap();
        assert_eq!(counters.activations, 0);
        assert_eq!(counters.check_runs, 0);
        assert_eq!(counters.answers, 1);
    }

    #[test]
    fn raw_chs_lists_checks() {
        let (_, r) = run(GUARDED, "c", dcc());
        let a = &r.unwrap()[0];
        assert_eq!(a.raw_chs, ["c", "not b", "not p", "not a", "chk_6"]);
    }

    #[test]
    fn trail_restores_state_after_exhaustion() {
        let mut p = parse_program(GUARDED).unwrap();
        let q = parse_query(&mut p, "a").unwrap();
        let a = Analysis::new(&p);
        let mut s = Solver::new(&a.checks, &a.partition, &q, dcc());
        let before = s.state.clone();
        assert!(s.next_answer().unwrap().is_none());
        assert_eq!(s.state, before);
        assert!(s.trail.is_empty());
    }
}
