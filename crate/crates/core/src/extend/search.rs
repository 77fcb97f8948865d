//! Backtracking search for F-proper solutions.
//!
//! The search branches on an unsatisfied clause with the fewest undecided
//! literals, splitting it into disjoint cases (first literal true; first false
//! and second true; ...). Linear consequences are tracked by an [`Echelon`], so
//! a literal is decided as soon as the current equations fix its form. Because
//! the branches are disjoint, the same search counts solutions exactly.

use super::ExtendError;
use crate::formula::{LinClause, LinCnf};
use crate::gf2::{Echelon, LinEquation, LinSystem, Push};

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

/// Solutions of a linear system that satisfy a fixed set of clauses.
#[derive(Clone, Debug)]
pub struct ProperSearch {
    nvars: usize,
    clauses: Vec<LinClause>,
    budget: u64,
}

enum Goal {
    Find,
    Count,
}

enum Outcome {
    Found(Vec<bool>),
    Count(f64),
}

struct Run<'a> {
    clauses: Vec<&'a LinClause>,
    nodes: u64,
    budget: u64,
}

impl ProperSearch {
    /// Clauses indexed by `f`; syntactic tautologies are dropped.
    pub fn new(cnf: &LinCnf, f: &[usize]) -> Self {
        let mut idx = f.to_vec();
        idx.sort_unstable();
        idx.dedup();
        ProperSearch {
            nvars: cnf.nvars(),
            clauses: idx.into_iter().map(|i| cnf.clause(i)).filter(|c| !c.is_tautological()).cloned().collect(),
            budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_proper(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.evaluate(assignment))
    }

    /// An F-proper solution of `sys` that also satisfies `require`.
    pub fn find(&self, sys: &LinSystem, require: Option<&LinClause>) -> Result<Option<Vec<bool>>, ExtendError> {
        let Some(mut e) = Echelon::from_system(sys) else {
            return Ok(None);
        };
        self.find_in(&mut e, require)
    }

    /// As [`ProperSearch::find`], starting from (and restoring) `e`.
    pub fn find_in(&self, e: &mut Echelon, require: Option<&LinClause>) -> Result<Option<Vec<bool>>, ExtendError> {
        let mut run = self.run(require);
        match run.solve(e, &Goal::Find)? {
            Outcome::Found(s) => Ok(Some(s)),
            Outcome::Count(_) => Ok(None),
        }
    }

    /// Number of F-proper solutions of `sys`.
    pub fn count(&self, sys: &LinSystem) -> Result<f64, ExtendError> {
        let Some(mut e) = Echelon::from_system(sys) else {
            return Ok(0.0);
        };
        self.count_in(&mut e)
    }

    pub fn count_in(&self, e: &mut Echelon) -> Result<f64, ExtendError> {
        let mut run = self.run(None);
        match run.solve(e, &Goal::Count)? {
            Outcome::Count(c) => Ok(c),
            Outcome::Found(_) => unreachable!("counting never stops at a solution"),
        }
    }

    fn run<'a>(&'a self, require: Option<&'a LinClause>) -> Run<'a> {
        let mut clauses: Vec<&LinClause> = self.clauses.iter().collect();
        if let Some(r) = require.filter(|r| !r.is_tautological()) {
            clauses.push(r);
        }
        Run { clauses, nodes: 0, budget: self.budget }
    }
}

impl Run<'_> {
    fn solve(&mut self, e: &mut Echelon, goal: &Goal) -> Result<Outcome, ExtendError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ExtendError::BudgetExceeded { what: "search nodes", budget: self.budget });
        }
        let mark = e.mark();
        let branch = match self.propagate(e) {
            Err(()) => {
                e.undo_to(mark);
                return Ok(Outcome::Count(0.0));
            }
            Ok(None) => {
                let out = match goal {
                    Goal::Find => Outcome::Found(e.solution()),
                    Goal::Count => Outcome::Count((e.free_count() as f64).exp2()),
                };
                e.undo_to(mark);
                return Ok(out);
            }
            Ok(Some(lits)) => lits,
        };
        let mut total = 0.0;
        for i in 0..branch.len() {
            let m = e.mark();
            let consistent =
                branch[..i].iter().all(|l| e.push(&l.flipped()) != Push::Conflict) && e.push(&branch[i]) != Push::Conflict;
            if consistent {
                match self.solve(e, goal) {
                    Ok(Outcome::Found(s)) => {
                        e.undo_to(mark);
                        return Ok(Outcome::Found(s));
                    }
                    Ok(Outcome::Count(c)) => total += c,
                    Err(err) => {
                        e.undo_to(mark);
                        return Err(err);
                    }
                }
            }
            e.undo_to(m);
        }
        e.undo_to(mark);
        Ok(Outcome::Count(total))
    }

    /// Unit propagation to a fixpoint. Returns `Err` on a falsified clause,
    /// `Ok(None)` when every clause is satisfied, and otherwise the undecided
    /// literals of a clause with the fewest of them.
    fn propagate(&self, e: &mut Echelon) -> Result<Option<Vec<LinEquation>>, ()> {
        loop {
            let mut changed = false;
            let mut best: Option<(usize, usize)> = None;
            for (ci, c) in self.clauses.iter().enumerate() {
                let mut open = 0;
                let mut last = None;
                let mut sat = false;
                for l in c.literals() {
                    match e.value_of(&l.form) {
                        Some(v) if v == l.rhs => {
                            sat = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open += 1;
                            last = Some(l);
                        }
                    }
                }
                if sat {
                    continue;
                }
                match (open, last) {
                    (0, _) => return Err(()),
                    (1, Some(l)) => {
                        if e.push(l) == Push::Conflict {
                            return Err(());
                        }
                        changed = true;
                    }
                    _ => {
                        if best.is_none_or(|(o, _)| open < o) {
                            best = Some((open, ci));
                        }
                    }
                }
            }
            if !changed {
                return Ok(best.map(|(_, ci)| {
                    self.clauses[ci].literals().iter().filter(|l| e.value_of(&l.form).is_none()).cloned().collect()
                }));
            }
        }
    }
}

/// F-proper solution of `sys` (optionally also satisfying clause `require`)
/// with the default node budget.
pub fn has_f_proper_solution(
    sys: &LinSystem,
    cnf: &LinCnf,
    f: &[usize],
    require: Option<usize>,
) -> Result<Option<Vec<bool>>, ExtendError> {
    ProperSearch::new(cnf, f).find(sys, require.map(|i| cnf.clause(i)))
}
