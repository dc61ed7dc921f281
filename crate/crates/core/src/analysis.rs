//! Static analysis: dependency graph, odd loops over negation, compiled
//! duals, consistency sub-checks, and the splitting-set partition that
//! decides which sub-checks are relevant to a literal.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::{self, Write as _};
use std::ops::BitXor;

use serde::Serialize;

use crate::ast::{AtomId, Literal, Program, RuleId};
use crate::parser::{CHECK_PREFIX, NMR_CHECK};
use crate::union_find::UnionFind;

/// Signed edge from a rule head to one of its body atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: AtomId,
    pub to: AtomId,
    pub negative: bool,
}

#[derive(Debug, Clone)]
pub struct DependencyGraph {
    atom_count: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<(AtomId, bool)>>,
}

impl DependencyGraph {
    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    /// Edges in first-occurrence order (rule order, then body order).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Successors of `a` as `(atom, negative)` pairs.
    pub fn successors(&self, a: AtomId) -> &[(AtomId, bool)] {
        &self.out[a.index()]
    }
}

/// One signed edge per distinct `(head, body atom, sign)`. Constraints
/// contribute nothing here; they become sub-checks.
pub fn build_dependency_graph(p: &Program) -> DependencyGraph {
    let n = p.atom_count();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut out = vec![Vec::new(); n];
    for rule in &p.rules {
        let Some(head) = rule.head else { continue };
        for lit in &rule.body {
            let e = Edge {
                from: head,
                to: lit.atom,
                negative: lit.is_negative(),
            };
            if seen.insert(e) {
                edges.push(e);
                out[head.index()].push((lit.atom, e.negative));
            }
        }
    }
    DependencyGraph {
        atom_count: n,
        edges,
        out,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_sign(negative: bool) -> Parity {
        if negative {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    fn bit(self) -> u8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => 2,
        }
    }
}

impl BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Which parities of negative-edge count are realised by walks between two
/// atoms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Parities(u8);

impl Parities {
    pub fn contains(self, parity: Parity) -> bool {
        self.0 & parity.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// Closure of the dependency graph over `(atom, parity)` states. Walks may
/// revisit atoms, so this over-approximates what simple paths can realise.
#[derive(Debug, Clone)]
pub struct ParityReachability {
    n: usize,
    table: Vec<u8>,
}

impl ParityReachability {
    pub fn get(&self, from: AtomId, to: AtomId) -> Parities {
        Parities(self.table[from.index() * self.n + to.index()])
    }

    pub fn holds(&self, from: AtomId, to: AtomId, parity: Parity) -> bool {
        self.get(from, to).contains(parity)
    }
}

pub fn parity_reachability(g: &DependencyGraph) -> ParityReachability {
    let n = g.atom_count;
    let mut table = vec![0u8; n * n];
    let mut queue = VecDeque::new();
    for src in 0..n {
        let row = &mut table[src * n..(src + 1) * n];
        row[src] |= Parity::Even.bit();
        queue.push_back((src, Parity::Even));
        while let Some((v, par)) = queue.pop_front() {
            for &(w, negative) in &g.out[v] {
                let next = par ^ Parity::of_sign(negative);
                let cell = &mut row[w.index()];
                if *cell & next.bit() == 0 {
                    *cell |= next.bit();
                    queue.push_back((w.index(), next));
                }
            }
        }
    }
    ParityReachability { n, table }
}

/// Rules that carry an odd loop over negation: every constraint, and every
/// rule whose head is reached again from one of its own body literals along
/// a simple path such that the body literal's sign plus the path's
/// negations is odd.
pub fn detect_olon_rules(p: &Program, g: &DependencyGraph, r: &ParityReachability) -> BTreeSet<RuleId> {
    let mut olon = BTreeSet::new();
    let mut visited = vec![false; p.atom_count()];
    for rule in &p.rules {
        let Some(head) = rule.head else {
            olon.insert(rule.id);
            continue;
        };
        let is_olon = rule.body.iter().any(|lit| {
            let needed = Parity::Odd ^ Parity::of_sign(lit.is_negative());
            if lit.atom == head {
                return needed == Parity::Even;
            }
            if !r.holds(lit.atom, head, needed) {
                return false;
            }
            visited[lit.atom.index()] = true;
            let found = simple_path(g, r, lit.atom, head, needed, &mut visited);
            visited[lit.atom.index()] = false;
            found
        });
        if is_olon {
            olon.insert(rule.id);
        }
    }
    olon
}

/// Is there a simple path `from -> ... -> target` whose negative-edge count
/// has parity `needed`, avoiding `visited` atoms?
fn simple_path(
    g: &DependencyGraph,
    r: &ParityReachability,
    from: AtomId,
    target: AtomId,
    needed: Parity,
    visited: &mut [bool],
) -> bool {
    for &(w, negative) in g.successors(from) {
        let rest = needed ^ Parity::of_sign(negative);
        if w == target {
            if rest == Parity::Even {
                return true;
            }
            continue;
        }
        if visited[w.index()] || !r.holds(w, target, rest) {
            continue;
        }
        visited[w.index()] = true;
        let found = simple_path(g, r, w, target, rest, visited);
        visited[w.index()] = false;
        if found {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CheckId(pub u32);

impl CheckId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dual-encoded satisfaction test for one OLON rule. Proving any one clause
/// literal satisfies the rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub name: String,
    pub source_rule: RuleId,
    pub clauses: Vec<Literal>,
}

impl SubCheck {
    /// Clauses in rendering order: positive literals first, each group in
    /// construction order.
    pub fn rendering_order(&self) -> impl Iterator<Item = Literal> + '_ {
        let pos = self.clauses.iter().filter(|l| l.positive);
        let neg = self.clauses.iter().filter(|l| !l.positive);
        pos.chain(neg).copied()
    }
}

/// Builds the sub-check for `rule`: append `not head` if missing, then take
/// the complement of every literal of the augmented body.
pub fn build_subcheck(rule: &crate::ast::Rule) -> SubCheck {
    let mut body = rule.body.clone();
    if let Some(h) = rule.head {
        let not_head = Literal::neg(h);
        if !body.contains(&not_head) {
            body.push(not_head);
        }
    }
    SubCheck {
        name: format!("{CHECK_PREFIX}{}", rule.id.0 + 1),
        source_rule: rule.id,
        clauses: body.into_iter().map(Literal::complement).collect(),
    }
}

/// Refutation of one defining rule: establishing any alternative (tried in
/// body order) refutes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualRule {
    pub source_rule: RuleId,
    pub alternatives: Vec<Literal>,
}

/// For every atom, the rules that must all be refuted to establish its
/// negation. An atom with no rules has an empty list: `not a` holds outright.
#[derive(Debug, Clone, Default)]
pub struct DualIndex {
    by_atom: Vec<Vec<DualRule>>,
}

impl DualIndex {
    pub fn of(&self, atom: AtomId) -> &[DualRule] {
        self.by_atom.get(atom.index()).map_or(&[], Vec::as_slice)
    }
}

pub fn compile_duals(p: &Program) -> DualIndex {
    let mut by_atom = vec![Vec::new(); p.atom_count()];
    for rule in &p.rules {
        if let Some(h) = rule.head {
            by_atom[h.index()].push(DualRule {
                source_rule: rule.id,
                alternatives: rule.body.iter().map(|l| l.complement()).collect(),
            });
        }
    }
    DualIndex { by_atom }
}

/// A program together with everything the solver needs to execute it.
#[derive(Debug, Clone)]
pub struct CheckProgram {
    pub base: Program,
    pub olon_rules: BTreeSet<RuleId>,
    pub subchecks: Vec<SubCheck>,
    pub duals: DualIndex,
    rules_by_head: Vec<Vec<RuleId>>,
}

impl CheckProgram {
    /// Defining rules of `atom`; atoms interned after analysis have none.
    pub fn rules_for(&self, atom: AtomId) -> &[RuleId] {
        self.rules_by_head.get(atom.index()).map_or(&[], Vec::as_slice)
    }

    pub fn subcheck(&self, id: CheckId) -> &SubCheck {
        &self.subchecks[id.index()]
    }

    pub fn check_ids(&self) -> impl DoubleEndedIterator<Item = CheckId> {
        (0..self.subchecks.len() as u32).map(CheckId)
    }

    /// The sub-checks and the NMR check in clause-per-line syntax.
    pub fn render_checks(&self) -> String {
        let atoms = &self.base.atoms;
        let mut out = String::new();
        for check in &self.subchecks {
            for lit in check.rendering_order() {
                let _ = writeln!(out, "{} :- {}.", check.name, lit.display(atoms));
            }
        }
        out.push_str(NMR_CHECK);
        if !self.subchecks.is_empty() {
            out.push_str(" :- ");
            let names: Vec<&str> = self.subchecks.iter().map(|c| c.name.as_str()).collect();
            out.push_str(&names.join(", "));
        }
        out.push_str(".\n");
        out
    }
}

pub fn build_check_program(p: &Program) -> CheckProgram {
    let graph = build_dependency_graph(p);
    let reach = parity_reachability(&graph);
    let olon_rules = detect_olon_rules(p, &graph, &reach);
    let subchecks = olon_rules.iter().map(|&id| build_subcheck(p.rule(id))).collect();
    CheckProgram {
        base: p.clone(),
        olon_rules,
        subchecks,
        duals: compile_duals(p),
        rules_by_head: p.rules_by_head(),
    }
}

/// Disjoint splitting sets, each owning the sub-checks whose reachable
/// atoms it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingPartition {
    sets: Vec<Vec<AtomId>>,
    atom_to_set: Vec<Option<usize>>,
    set_to_checks: Vec<Vec<CheckId>>,
    check_to_set: Vec<Option<usize>>,
}

impl SplittingPartition {
    /// Sets ordered by their lowest-numbered sub-check; atoms sorted by id.
    pub fn sets(&self) -> &[Vec<AtomId>] {
        &self.sets
    }

    pub fn set_of(&self, atom: AtomId) -> Option<usize> {
        self.atom_to_set.get(atom.index()).copied().flatten()
    }

    pub fn checks_of_set(&self, set: usize) -> &[CheckId] {
        &self.set_to_checks[set]
    }

    /// `None` only for a sub-check with no clauses (an empty constraint).
    pub fn set_of_check(&self, check: CheckId) -> Option<usize> {
        self.check_to_set[check.index()]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Depth-first collection from each sub-check's clause atoms through rule
/// bodies. Reaching an atom already claimed by another check merges the two
/// sets and stops the descent there.
pub fn build_splitting_partition(cp: &CheckProgram) -> SplittingPartition {
    let n = cp.base.atom_count();
    let k = cp.subchecks.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut uf = UnionFind::new(k);
    let mut stack = Vec::new();

    for (c, check) in cp.subchecks.iter().enumerate() {
        stack.extend(check.clauses.iter().rev().map(|l| l.atom));
        while let Some(a) = stack.pop() {
            match owner[a.index()] {
                Some(o) => {
                    uf.union(o, c);
                }
                None => {
                    owner[a.index()] = Some(c);
                    for &rid in cp.rules_for(a).iter().rev() {
                        stack.extend(cp.base.rule(rid).body.iter().rev().map(|l| l.atom));
                    }
                }
            }
        }
    }

    let mut root_to_set = vec![None; k];
    let mut check_to_set = vec![None; k];
    let mut set_to_checks: Vec<Vec<CheckId>> = Vec::new();
    for (c, check) in cp.subchecks.iter().enumerate() {
        if check.clauses.is_empty() {
            continue;
        }
        let root = uf.find(c);
        let set = *root_to_set[root].get_or_insert_with(|| {
            set_to_checks.push(Vec::new());
            set_to_checks.len() - 1
        });
        check_to_set[c] = Some(set);
        set_to_checks[set].push(CheckId(c as u32));
    }

    let mut sets = vec![Vec::new(); set_to_checks.len()];
    let mut atom_to_set = vec![None; n];
    for (a, o) in owner.iter().enumerate() {
        if let Some(o) = *o {
            let set = root_to_set[uf.find(o)].expect("owning check has a set");
            atom_to_set[a] = Some(set);
            sets[set].push(AtomId(a as u32));
        }
    }
    SplittingPartition {
        sets,
        atom_to_set,
        set_to_checks,
        check_to_set,
    }
}

/// Sub-checks relevant to `lit`: those owned by the splitting set containing
/// its atom, or none when the atom is in no set.
pub fn dcc_relevant_checks(part: &SplittingPartition, lit: Literal) -> &[CheckId] {
    match part.set_of(lit.atom) {
        Some(set) => &part.set_to_checks[set],
        None => &[],
    }
}

/// Program analysis bundle: the compiled check program plus its partition.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub checks: CheckProgram,
    pub partition: SplittingPartition,
}

impl Analysis {
    pub fn new(p: &Program) -> Self {
        let checks = build_check_program(p);
        let partition = build_splitting_partition(&checks);
        Analysis { checks, partition }
    }

    pub fn report(&self) -> AnalysisReport {
        let atoms = &self.checks.base.atoms;
        let render = |l: Literal| l.display(atoms).to_string();
        AnalysisReport {
            olon_rules: self.checks.olon_rules.iter().map(|r| r.0).collect(),
            checks: self
                .checks
                .subchecks
                .iter()
                .map(|c| CheckReport {
                    name: c.name.clone(),
                    source_rule: c.source_rule.0,
                    clauses: c.rendering_order().map(render).collect(),
                })
                .collect(),
            nmr_check: self.checks.subchecks.iter().map(|c| c.name.clone()).collect(),
            splitting_sets: (0..self.partition.len())
                .map(|s| SetReport {
                    atoms: {
                        let mut names: Vec<String> = self.partition.sets[s]
                            .iter()
                            .map(|&a| atoms.name(a).to_owned())
                            .collect();
                        names.sort();
                        names
                    },
                    checks: self.partition.set_to_checks[s]
                        .iter()
                        .map(|&c| self.checks.subcheck(c).name.clone())
                        .collect(),
                })
                .collect(),
            rendered: self.checks.render_checks(),
        }
    }
}

/// Structured `analyze` output.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    /// Zero-based rule ids, ascending.
    pub olon_rules: Vec<u32>,
    pub checks: Vec<CheckReport>,
    pub nmr_check: Vec<String>,
    pub splitting_sets: Vec<SetReport>,
    /// The checks in clause-per-line syntax.
    #[serde(skip)]
    pub rendered: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub source_rule: u32,
    pub clauses: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SetReport {
    pub atoms: Vec<String>,
    pub checks: Vec<String>,
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "% olon rules:")?;
        for r in &self.olon_rules {
            write!(f, " {r}")?;
        }
        writeln!(f)?;
        f.write_str(&self.rendered)?;
        writeln!(f, "% splitting sets: {}", self.splitting_sets.len())?;
        for (i, s) in self.splitting_sets.iter().enumerate() {
            writeln!(
                f,
                "% set {}: [{}] checks: {} ({})",
                i + 1,
                s.atoms.join(", "),
                s.checks.len(),
                s.checks.join(", ")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    pub(crate) const THREE_CHECKS: &str = "p :- q.\nq :- not r, not p.\nr :- not p.\n:- q, r.\n";
    pub(crate) const GUARDED: &str = "a :- b.\nb :- not c.\nc :- not b.\np :- a.\nq :- b.\n:- p, q.\n";
    pub(crate) const MERGED: &str = ":- p, q.\nq :- not r, not q.\n";

    fn atom(p: &Program, name: &str) -> AtomId {
        p.atoms.lookup(name).unwrap()
    }

    fn edge(p: &Program, from: &str, to: &str, negative: bool) -> Edge {
        Edge {
            from: atom(p, from),
            to: atom(p, to),
            negative,
        }
    }

    #[test]
    fn guarded_choice_graph() {
        let p = parse_program(GUARDED).unwrap();
        let g = build_dependency_graph(&p);
        assert_eq!(
            g.edges(),
            &[
                edge(&p, "a", "b", false),
                edge(&p, "b", "c", true),
                edge(&p, "c", "b", true),
                edge(&p, "p", "a", false),
                edge(&p, "q", "b", false),
            ]
        );
    }

    #[test]
    fn both_signs_kept_and_duplicates_merged() {
        let p = parse_program("p :- q, not q. p :- q.").unwrap();
        let g = build_dependency_graph(&p);
        assert_eq!(g.edges(), &[edge(&p, "p", "q", false), edge(&p, "p", "q", true)]);
        assert!(build_dependency_graph(&Program::new()).edges().is_empty());
    }

    #[test]
    fn reachability_examples() {
        let p = parse_program(GUARDED).unwrap();
        let r = parity_reachability(&build_dependency_graph(&p));
        let b = atom(&p, "b");
        assert!(r.holds(b, b, Parity::Even));
        assert!(!r.holds(b, b, Parity::Odd));
        assert!(r.holds(b, atom(&p, "c"), Parity::Odd));

        let p = parse_program(THREE_CHECKS).unwrap();
        let r = parity_reachability(&build_dependency_graph(&p));
        let q = atom(&p, "q");
        assert!(r.holds(q, q, Parity::Odd));

        let p = parse_program("a.").unwrap();
        let r = parity_reachability(&build_dependency_graph(&p));
        assert!(r.holds(AtomId(0), AtomId(0), Parity::Even));
        assert!(!r.holds(AtomId(0), AtomId(0), Parity::Odd));
    }

    fn olon(text: &str) -> Vec<u32> {
        let p = parse_program(text).unwrap();
        let g = build_dependency_graph(&p);
        let r = parity_reachability(&g);
        detect_olon_rules(&p, &g, &r).into_iter().map(|r| r.0).collect()
    }

    #[test]
    fn olon_detection() {
        assert_eq!(olon(THREE_CHECKS), vec![0, 1, 3]);
        assert_eq!(olon("p :- not p."), vec![0]);
        assert_eq!(olon("a :- b. b :- a."), Vec::<u32>::new());
        assert_eq!(olon(GUARDED), vec![5]);
        assert_eq!(olon(MERGED), vec![0, 1]);
        assert_eq!(olon("p :- not q. q :- not p."), Vec::<u32>::new());
        assert_eq!(olon("p :- p."), Vec::<u32>::new());
    }

    fn lits(p: &Program, spec: &[&str]) -> Vec<Literal> {
        spec.iter()
            .map(|s| match s.strip_prefix("not ") {
                Some(a) => Literal::neg(atom(p, a)),
                None => Literal::pos(atom(p, s)),
            })
            .collect()
    }

    #[test]
    fn subcheck_construction() {
        let p = parse_program(THREE_CHECKS).unwrap();
        let c = build_subcheck(&p.rules[1]);
        assert_eq!(c.name, "chk_2");
        assert_eq!(c.clauses, lits(&p, &["r", "p", "q"]));
        let c = build_subcheck(&p.rules[3]);
        assert_eq!(c.name, "chk_4");
        assert_eq!(c.clauses, lits(&p, &["not q", "not r"]));
        let c = build_subcheck(&p.rules[0]);
        assert_eq!(c.clauses, lits(&p, &["not q", "p"]));
        assert_eq!(c.rendering_order().collect::<Vec<_>>(), lits(&p, &["p", "not q"]));

        // `not h` already present is not repeated.
        let p = parse_program("p :- not p, q.").unwrap();
        let c = build_subcheck(&p.rules[0]);
        assert_eq!(c.clauses, lits(&p, &["p", "not q"]));
    }

    #[test]
    fn duals() {
        let p = parse_program("p :- q, not r. s :- q. s :- r.").unwrap();
        let d = compile_duals(&p);
        let dp = d.of(atom(&p, "p"));
        assert_eq!(dp.len(), 1);
        assert_eq!(dp[0].alternatives, lits(&p, &["not q", "r"]));
        assert!(d.of(atom(&p, "r")).is_empty());
        let ds = d.of(atom(&p, "s"));
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[0].alternatives, lits(&p, &["not q"]));
        assert_eq!(ds[1].alternatives, lits(&p, &["not r"]));
    }

    #[test]
    fn three_check_rendering() {
        let p = parse_program(THREE_CHECKS).unwrap();
        let cp = build_check_program(&p);
        assert_eq!(
            cp.render_checks(),
            "chk_1 :- p.\nchk_1 :- not q.\nchk_2 :- r.\nchk_2 :- p.\nchk_2 :- q.\n\
             chk_4 :- not q.\nchk_4 :- not r.\nnmr_check :- chk_1, chk_2, chk_4.\n"
        );
    }

    #[test]
    fn merged_rendering() {
        let p = parse_program(MERGED).unwrap();
        let cp = build_check_program(&p);
        assert_eq!(
            cp.render_checks(),
            "chk_1 :- not p.\nchk_1 :- not q.\nchk_2 :- r.\nchk_2 :- q.\nnmr_check :- chk_1, chk_2.\n"
        );
    }

    #[test]
    fn olon_free_program_has_empty_nmr_check() {
        let p = parse_program("a :- not b. b :- not a.").unwrap();
        let cp = build_check_program(&p);
        assert!(cp.subchecks.is_empty());
        assert_eq!(cp.render_checks(), "nmr_check.\n");
        let part = build_splitting_partition(&cp);
        assert!(part.is_empty());
        assert!(dcc_relevant_checks(&part, Literal::pos(AtomId(0))).is_empty());
    }

    fn set_names(p: &Program, part: &SplittingPartition, i: usize) -> Vec<String> {
        let mut v: Vec<String> = part.sets()[i].iter().map(|&a| p.atoms.name(a).to_owned()).collect();
        v.sort();
        v
    }

    #[test]
    fn guarded_choice_partition() {
        let p = parse_program(GUARDED).unwrap();
        let a = Analysis::new(&p);
        assert_eq!(a.partition.len(), 1);
        assert_eq!(set_names(&p, &a.partition, 0), ["a", "b", "c", "p", "q"]);
        let rel = dcc_relevant_checks(&a.partition, Literal::pos(atom(&p, "a")));
        assert_eq!(rel.len(), 1);
        assert_eq!(a.checks.subcheck(rel[0]).name, "chk_6");
    }

    #[test]
    fn merged_partition() {
        let p = parse_program(MERGED).unwrap();
        let a = Analysis::new(&p);
        assert_eq!(a.partition.len(), 1);
        assert_eq!(set_names(&p, &a.partition, 0), ["p", "q", "r"]);
        assert_eq!(a.partition.checks_of_set(0), &[CheckId(0), CheckId(1)]);
    }

    #[test]
    fn three_check_relevance() {
        let p = parse_program(THREE_CHECKS).unwrap();
        let a = Analysis::new(&p);
        let rel = dcc_relevant_checks(&a.partition, Literal::pos(atom(&p, "r")));
        let names: Vec<_> = rel.iter().map(|&c| a.checks.subcheck(c).name.as_str()).collect();
        assert_eq!(names, ["chk_1", "chk_2", "chk_4"]);
    }

    #[test]
    fn disjoint_copies_give_two_sets() {
        let renamed = GUARDED
            .replace('a', "a2")
            .replace('b', "b2")
            .replace('c', "c2")
            .replace('p', "p2")
            .replace('q', "q2");
        let p = parse_program(&format!("{GUARDED}{renamed}")).unwrap();
        let a = Analysis::new(&p);
        assert_eq!(a.partition.len(), 2);
        assert_eq!(set_names(&p, &a.partition, 0), ["a", "b", "c", "p", "q"]);
        assert_eq!(set_names(&p, &a.partition, 1), ["a2", "b2", "c2", "p2", "q2"]);
    }

    #[test]
    fn uncovered_atoms_have_no_checks() {
        let p = parse_program("x :- a. a :- not b. b :- not a. :- a.").unwrap();
        let a = Analysis::new(&p);
        assert_eq!(a.partition.len(), 1);
        assert_eq!(a.partition.set_of(atom(&p, "x")), None);
        assert!(dcc_relevant_checks(&a.partition, Literal::pos(atom(&p, "x"))).is_empty());
        assert_eq!(dcc_relevant_checks(&a.partition, Literal::neg(atom(&p, "b"))).len(), 1);
    }

    #[test]
    fn report_text() {
        let p = parse_program(MERGED).unwrap();
        let text = Analysis::new(&p).report().to_string();
        assert!(text.starts_with("% olon rules: 0 1\nchk_1 :- not p.\n"));
        assert!(text.ends_with("% splitting sets: 1\n% set 1: [p, q, r] checks: 2 (chk_1, chk_2)\n"));
    }
}
