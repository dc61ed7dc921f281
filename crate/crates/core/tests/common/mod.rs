//! Shared fixtures for the integration suites: the example programs and a
//! seeded random program generator.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dccasp::analysis::Analysis;
use dccasp::ast::{AtomId, Literal, Program, Query};
use dccasp::engine::{solve, Mode, PartialAnswerSet, SolveConfig};
use dccasp::oracle::{enumerate_answer_sets, AnswerSet, DEFAULT_ATOM_LIMIT};
use rand::Rng;

pub const THREE_CHECKS: &str = "p :- q.\nq :- not r, not p.\nr :- not p.\n:- q, r.\n";
pub const GUARDED: &str = "a :- b.\nb :- not c.\nc :- not b.\np :- a.\nq :- b.\n:- p, q.\n";
pub const MERGED: &str = ":- p, q.\nq :- not r, not q.\n";

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_body: usize,
    pub negation: f64,
    pub constraint: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_atoms: 8,
            max_rules: 12,
            max_body: 3,
            negation: 0.5,
            constraint: 0.15,
        }
    }
}

/// Random ground program over atoms named `{prefix}0`, `{prefix}1`, ...
pub fn random_program<R: Rng>(rng: &mut R, shape: Shape, prefix: &str) -> Program {
    let n = rng.gen_range(1..=shape.max_atoms);
    let mut p = Program::new();
    let atoms: Vec<AtomId> = (0..n).map(|i| p.atoms.intern(&format!("{prefix}{i}"))).collect();
    let rules = rng.gen_range(1..=shape.max_rules);
    for _ in 0..rules {
        let constraint = rng.gen_bool(shape.constraint);
        let len = if constraint {
            rng.gen_range(1..=shape.max_body)
        } else {
            rng.gen_range(0..=shape.max_body)
        };
        let body = (0..len)
            .map(|_| Literal {
                atom: atoms[rng.gen_range(0..n)],
                positive: !rng.gen_bool(shape.negation),
            })
            .collect();
        let head = (!constraint).then(|| atoms[rng.gen_range(0..n)]);
        p.add_rule(head, body);
    }
    p
}

pub fn oracle(p: &Program) -> Vec<AnswerSet> {
    enumerate_answer_sets(p, DEFAULT_ATOM_LIMIT).unwrap()
}

pub fn query(atom: AtomId) -> Query {
    Query {
        goals: vec![Literal::pos(atom)],
    }
}

pub fn run(a: &Analysis, q: &Query, mode: Mode, max: usize) -> Vec<PartialAnswerSet> {
    let cfg = SolveConfig::new(mode).with_max_answers(max);
    solve(&a.checks, &a.partition, q, cfg).unwrap()
}

/// Some answer set contains every positive and none of the negatives.
pub fn extends_to_model(pas: &PartialAnswerSet, models: &[AnswerSet]) -> bool {
    models
        .iter()
        .any(|m| pas.positives.is_subset(&m.atoms) && pas.negatives.iter().all(|a| !m.atoms.contains(a)))
}

pub fn positives_within_model(pas: &PartialAnswerSet, models: &[AnswerSet]) -> bool {
    models.iter().any(|m| pas.positives.is_subset(&m.atoms))
}

/// Appends `other` to `base` with atoms renamed apart; returns the atoms of
/// `other` in the combined program.
pub fn concat(base: &Program, other: &Program) -> (Program, BTreeSet<AtomId>) {
    let mut out = base.clone();
    let map: Vec<AtomId> = other
        .atoms
        .ids()
        .map(|a| out.atoms.intern(other.atoms.name(a)))
        .collect();
    for r in &other.rules {
        let head = r.head.map(|h| map[h.index()]);
        let body = r
            .body
            .iter()
            .map(|l| Literal {
                atom: map[l.atom.index()],
                positive: l.positive,
            })
            .collect();
        out.add_rule(head, body);
    }
    (out, map.into_iter().collect())
}

/// Proptest strategy for programs over atoms `a0..a{max_atoms-1}`.
pub fn arb_program(
    max_atoms: usize,
    max_rules: usize,
    max_body: usize,
) -> impl proptest::strategy::Strategy<Value = Program> {
    use proptest::prelude::*;
    (1..=max_atoms).prop_flat_map(move |n| {
        let lit = (0..n, any::<bool>());
        let rule = (
            proptest::option::weighted(0.85, 0..n),
            proptest::collection::vec(lit, 0..=max_body),
        );
        proptest::collection::vec(rule, 1..=max_rules).prop_map(move |rules| {
            let mut p = Program::new();
            let atoms: Vec<AtomId> = (0..n).map(|i| p.atoms.intern(&format!("a{i}"))).collect();
            for (head, body) in rules {
                let mut body: Vec<Literal> = body
                    .into_iter()
                    .map(|(a, positive)| Literal {
                        atom: atoms[a],
                        positive,
                    })
                    .collect();
                if head.is_none() && body.is_empty() {
                    body.push(Literal::pos(atoms[0]));
                }
                p.add_rule(head.map(|h| atoms[h]), body);
            }
            p
        })
    })
}

/// Smallest splitting set containing `seed`: close under "head in, body in".
pub fn close_splitting_set(p: &Program, seed: impl IntoIterator<Item = AtomId>) -> BTreeSet<AtomId> {
    let mut u: BTreeSet<AtomId> = seed.into_iter().collect();
    loop {
        let before = u.len();
        for r in &p.rules {
            if let Some(h) = r.head {
                if u.contains(&h) {
                    u.extend(r.body.iter().map(|l| l.atom));
                }
            }
        }
        if u.len() == before {
            return u;
        }
    }
}

/// Answer sets of `p` rebuilt from the bottom and the partially evaluated
/// top at `u`, compared with direct enumeration.
pub fn splitting_theorem_holds(p: &Program, u: &BTreeSet<AtomId>) -> bool {
    use dccasp::oracle::{partial_eval_top, split};
    let d = split(p, u).unwrap();
    let mut rebuilt: Vec<BTreeSet<AtomId>> = Vec::new();
    for a in oracle(&d.bottom) {
        let top = partial_eval_top(&d.top, u, &a.atoms).unwrap();
        for b in oracle(&top) {
            if b.atoms.iter().any(|x| u.contains(x)) {
                return false;
            }
            rebuilt.push(a.atoms.union(&b.atoms).copied().collect());
        }
    }
    let mut direct: Vec<BTreeSet<AtomId>> = oracle(p).into_iter().map(|m| m.atoms).collect();
    rebuilt.sort();
    direct.sort();
    rebuilt == direct
}

/// Every atom set over the program's atoms, for tiny programs.
pub fn all_subsets(p: &Program) -> impl Iterator<Item = BTreeSet<AtomId>> + '_ {
    let n = p.atom_count();
    assert!(n <= 12);
    (0u32..1 << n).map(move |mask| p.atoms.ids().filter(|a| mask & (1 << a.index()) != 0).collect())
}
