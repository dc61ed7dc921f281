//! Ground programs, literals and queries.
//!
//! A [`Program`] owns an atom table that interns every atom name to a dense
//! [`AtomId`]. Rules refer to atoms only through ids, so every analysis pass
//! can use plain vectors indexed by atom.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

/// Dense index into a program's atom table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AtomId(pub u32);

impl AtomId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of a rule, in source order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RuleId(pub u32);

impl RuleId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An atom or its default negation (`not a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Literal {
    pub atom: AtomId,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: AtomId) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: AtomId) -> Self {
        Literal { atom, positive: false }
    }

    pub fn complement(self) -> Self {
        Literal {
            atom: self.atom,
            positive: !self.positive,
        }
    }

    pub fn is_negative(self) -> bool {
        !self.positive
    }

    /// Displays the literal with names resolved against `atoms`.
    pub fn display(self, atoms: &AtomTable) -> LiteralDisplay<'_> {
        LiteralDisplay { lit: self, atoms }
    }
}

pub struct LiteralDisplay<'a> {
    lit: Literal,
    atoms: &'a AtomTable,
}

impl fmt::Display for LiteralDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.lit.positive {
            f.write_str("not ")?;
        }
        f.write_str(self.atoms.name(self.lit.atom))
    }
}

/// Bijective map between atom names and [`AtomId`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `name`, allocating one on first sight.
    pub fn intern(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = AtomId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.names.len() as u32).map(AtomId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// `head :- body.`; a missing head makes the rule an integrity constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: RuleId,
    pub head: Option<AtomId>,
    pub body: Vec<Literal>,
}

impl Rule {
    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.body.is_empty()
    }

    pub fn display<'a>(&'a self, atoms: &'a AtomTable) -> RuleDisplay<'a> {
        RuleDisplay { rule: self, atoms }
    }
}

pub struct RuleDisplay<'a> {
    rule: &'a Rule,
    atoms: &'a AtomTable,
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = self.rule.head {
            f.write_str(self.atoms.name(h))?;
            if self.rule.body.is_empty() {
                return f.write_str(".");
            }
            f.write_str(" ")?;
        }
        f.write_str(":- ")?;
        for (i, lit) in self.rule.body.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", lit.display(self.atoms))?;
        }
        f.write_str(".")
    }
}

/// A ground normal program: an atom table plus rules in source order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub atoms: AtomTable,
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a rule, assigning it the next rule id.
    pub fn add_rule(&mut self, head: Option<AtomId>, body: Vec<Literal>) -> RuleId {
        let id = RuleId(self.rules.len() as u32);
        debug_assert!(head.is_none_or(|h| h.index() < self.atoms.len()));
        debug_assert!(body.iter().all(|l| l.atom.index() < self.atoms.len()));
        self.rules.push(Rule { id, head, body });
        id
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn rule(&self, id: RuleId) -> &Rule {
        &self.rules[id.index()]
    }

    /// Rule ids grouped by head atom, each list in program order.
    pub fn rules_by_head(&self) -> Vec<Vec<RuleId>> {
        let mut by_head = vec![Vec::new(); self.atoms.len()];
        for rule in &self.rules {
            if let Some(h) = rule.head {
                by_head[h.index()].push(rule.id);
            }
        }
        by_head
    }

    /// Builds a program with the same atom table (ids preserved) and the
    /// given rules, renumbered in the order supplied.
    pub fn with_rules<'a, I>(&self, rules: I) -> Program
    where
        I: IntoIterator<Item = &'a Rule>,
    {
        let mut out = Program {
            atoms: self.atoms.clone(),
            rules: Vec::new(),
        };
        for rule in rules {
            out.add_rule(rule.head, rule.body.clone());
        }
        out
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{}", rule.display(&self.atoms))?;
        }
        Ok(())
    }
}

/// A non-empty conjunction of goal literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub goals: Vec<Literal>,
}

impl Query {
    pub fn display<'a>(&'a self, atoms: &'a AtomTable) -> impl fmt::Display + 'a {
        QueryDisplay { query: self, atoms }
    }
}

struct QueryDisplay<'a> {
    query: &'a Query,
    atoms: &'a AtomTable,
}

impl fmt::Display for QueryDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("?- ")?;
        for (i, lit) in self.query.goals.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", lit.display(self.atoms))?;
        }
        f.write_str(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let mut t = AtomTable::new();
        let a = t.intern("a");
        let b = t.intern("move(a,b)");
        assert_eq!(t.intern("a"), a);
        assert_ne!(a, b);
        assert_eq!(t.name(b), "move(a,b)");
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn complement_is_involutive() {
        let l = Literal::pos(AtomId(3));
        assert_eq!(l.complement().complement(), l);
        assert!(l.complement().is_negative());
    }

    #[test]
    fn rule_rendering() {
        let mut p = Program::new();
        let a = p.atoms.intern("a");
        let b = p.atoms.intern("b");
        p.add_rule(Some(a), vec![]);
        p.add_rule(Some(a), vec![Literal::neg(b)]);
        p.add_rule(None, vec![Literal::pos(a), Literal::pos(b)]);
        assert_eq!(p.to_string(), "a.\na :- not b.\n:- a, b.\n");
    }
}
