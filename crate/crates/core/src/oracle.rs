//! Brute-force stable-model semantics.
//!
//! Slow and obviously correct: the ground truth every solver property is
//! tested against. Constraints are treated as integrity constraints of the
//! least model. Also provides splitting of a program into bottom and top
//! and the partial evaluation of the top with respect to a bottom model.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::ast::{AtomId, Literal, Program};

pub const DEFAULT_ATOM_LIMIT: usize = 24;

/// Hard ceiling imposed by the bitmask representation.
const MASK_BITS: usize = 63;

pub type AtomSet = BTreeSet<AtomId>;

/// A stable model, given by its true atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnswerSet {
    pub atoms: AtomSet,
}

impl AnswerSet {
    pub fn contains(&self, a: AtomId) -> bool {
        self.atoms.contains(&a)
    }

    /// Sorted atom names in braces, e.g. `{ a, c }`.
    pub fn render(&self, p: &Program) -> String {
        let mut names: Vec<&str> = self.atoms.iter().map(|&a| p.atoms.name(a)).collect();
        names.sort_unstable();
        if names.is_empty() {
            "{ }".to_owned()
        } else {
            format!("{{ {} }}", names.join(", "))
        }
    }

    pub fn names(&self, p: &Program) -> Vec<String> {
        let mut names: Vec<String> = self.atoms.iter().map(|&a| p.atoms.name(a).to_owned()).collect();
        names.sort();
        names
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("program has {atoms} atoms, above the enumeration limit of {limit}")]
    LimitExceeded { atoms: usize, limit: usize },
    #[error("not a splitting set: body atom {body} of a rule for {head} is outside it")]
    ClosureViolation { head: String, body: String },
    #[error("top rule has head {0} inside the splitting set")]
    HeadInSplittingSet(String),
}

/// Gelfond-Lifschitz reduct of `p` with respect to `x`.
pub fn gl_reduct(p: &Program, x: &AtomSet) -> Program {
    let mut out = Program {
        atoms: p.atoms.clone(),
        rules: Vec::new(),
    };
    for rule in &p.rules {
        if rule.body.iter().any(|l| !l.positive && x.contains(&l.atom)) {
            continue;
        }
        let body = rule.body.iter().copied().filter(|l| l.positive).collect();
        out.add_rule(rule.head, body);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeastModel {
    Model(AtomSet),
    /// Some constraint's body holds in the fixpoint.
    Inconsistent,
}

/// Least fixpoint of the immediate-consequence operator.
///
/// # Panics
///
/// If `p` contains a negative literal.
pub fn least_model(p: &Program) -> LeastModel {
    assert!(
        p.rules.iter().all(|r| r.body.iter().all(|l| l.positive)),
        "least_model requires a positive program"
    );
    let mut model = vec![false; p.atom_count()];
    let mut changed = true;
    while changed {
        changed = false;
        for rule in &p.rules {
            let Some(h) = rule.head else { continue };
            if !model[h.index()] && rule.body.iter().all(|l| model[l.atom.index()]) {
                model[h.index()] = true;
                changed = true;
            }
        }
    }
    let violated = p
        .rules
        .iter()
        .any(|r| r.head.is_none() && r.body.iter().all(|l| model[l.atom.index()]));
    if violated {
        return LeastModel::Inconsistent;
    }
    LeastModel::Model(
        model
            .iter()
            .enumerate()
            .filter(|(_, &t)| t)
            .map(|(i, _)| AtomId(i as u32))
            .collect(),
    )
}

pub fn is_stable(p: &Program, x: &AtomSet) -> bool {
    matches!(least_model(&gl_reduct(p, x)), LeastModel::Model(m) if &m == x)
}

/// Program compiled to bitmasks over at most 63 atoms.
struct MaskProgram {
    rules: Vec<(Option<u32>, u64, u64)>,
}

impl MaskProgram {
    fn new(p: &Program) -> Self {
        let mask = |lits: &mut dyn Iterator<Item = &Literal>| lits.fold(0u64, |m, l| m | 1 << l.atom.0);
        MaskProgram {
            rules: p
                .rules
                .iter()
                .map(|r| {
                    let pos = mask(&mut r.body.iter().filter(|l| l.positive));
                    let neg = mask(&mut r.body.iter().filter(|l| !l.positive));
                    (r.head.map(|h| h.0), pos, neg)
                })
                .collect(),
        }
    }

    fn is_stable(&self, x: u64) -> bool {
        let mut m = 0u64;
        loop {
            let before = m;
            for &(head, pos, neg) in &self.rules {
                if let Some(h) = head {
                    if neg & x == 0 && pos & m == pos {
                        m |= 1 << h;
                    }
                }
            }
            if m == before {
                break;
            }
            if m & !x != 0 {
                return false;
            }
        }
        m == x
            && !self
                .rules
                .iter()
                .any(|&(head, pos, neg)| head.is_none() && neg & x == 0 && pos & m == pos)
    }
}

/// Every answer set of `p`, ordered by cardinality and then
/// lexicographically by atom id.
pub fn enumerate_answer_sets(p: &Program, atom_limit: usize) -> Result<Vec<AnswerSet>, OracleError> {
    let limit = atom_limit.min(MASK_BITS);
    if p.atom_count() > limit {
        return Err(OracleError::LimitExceeded {
            atoms: p.atom_count(),
            limit,
        });
    }
    // Only atoms with a defining rule can be true in a stable model.
    let heads: Vec<u32> = p
        .rules_by_head()
        .iter()
        .enumerate()
        .filter(|(_, rs)| !rs.is_empty())
        .map(|(a, _)| a as u32)
        .collect();
    let compiled = MaskProgram::new(p);
    let mut models: Vec<Vec<AtomId>> = (0..1u64 << heads.len())
        .into_par_iter()
        .filter_map(|sel| {
            let x = heads
                .iter()
                .enumerate()
                .filter(|(i, _)| sel >> i & 1 == 1)
                .fold(0u64, |m, (_, &a)| m | 1 << a);
            compiled
                .is_stable(x)
                .then(|| (0..64).filter(|b| x >> b & 1 == 1).map(AtomId).collect::<Vec<_>>())
        })
        .collect();
    models.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(models
        .into_iter()
        .map(|m| AnswerSet {
            atoms: m.into_iter().collect(),
        })
        .collect())
}

/// `p` split at the splitting set `u`.
#[derive(Debug, Clone)]
pub struct SplitDecomposition {
    pub u: AtomSet,
    pub bottom: Program,
    pub top: Program,
}

/// The first rule (head, body atom) breaking "head in `u` implies body in
/// `u`", if any.
pub fn closure_violation(p: &Program, u: &AtomSet) -> Option<(AtomId, AtomId)> {
    p.rules.iter().find_map(|r| {
        let h = r.head.filter(|h| u.contains(h))?;
        r.body.iter().find(|l| !u.contains(&l.atom)).map(|l| (h, l.atom))
    })
}

pub fn is_splitting_set(p: &Program, u: &AtomSet) -> bool {
    closure_violation(p, u).is_none()
}

/// Bottom gets the rules whose head is in `u`, plus constraints whose body
/// lies wholly in `u`; top gets the rest.
pub fn split(p: &Program, u: &AtomSet) -> Result<SplitDecomposition, OracleError> {
    if let Some((h, b)) = closure_violation(p, u) {
        return Err(OracleError::ClosureViolation {
            head: p.atoms.name(h).to_owned(),
            body: p.atoms.name(b).to_owned(),
        });
    }
    let in_bottom = |r: &&crate::ast::Rule| match r.head {
        Some(h) => u.contains(&h),
        None => r.body.iter().all(|l| u.contains(&l.atom)),
    };
    Ok(SplitDecomposition {
        u: u.clone(),
        bottom: p.with_rules(p.rules.iter().filter(in_bottom)),
        top: p.with_rules(p.rules.iter().filter(|r| !in_bottom(r))),
    })
}

/// Partial evaluation of `top` given that exactly the atoms `x` of `u` are
/// true: rules contradicted by `x` are dropped, and literals over `u` that
/// `x` satisfies are removed from the remaining bodies.
pub fn partial_eval_top(top: &Program, u: &AtomSet, x: &AtomSet) -> Result<Program, OracleError> {
    debug_assert!(x.is_subset(u));
    let mut out = Program {
        atoms: top.atoms.clone(),
        rules: Vec::new(),
    };
    for rule in &top.rules {
        if let Some(h) = rule.head.filter(|h| u.contains(h)) {
            return Err(OracleError::HeadInSplittingSet(top.atoms.name(h).to_owned()));
        }
        let contradicted = rule
            .body
            .iter()
            .any(|l| u.contains(&l.atom) && x.contains(&l.atom) != l.positive);
        if contradicted {
            continue;
        }
        let body = rule.body.iter().copied().filter(|l| !u.contains(&l.atom)).collect();
        out.add_rule(rule.head, body);
    }
    Ok(out)
}
