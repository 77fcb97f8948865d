//! Linear clauses, labeled linear CNFs, the formula families and the XLCNF codec.

mod codec;
mod generate;
mod graph;

pub use codec::{parse_clause_tokens, parse_form, parse_literal, parse_xlcnf, write_clause, write_xlcnf};
pub use generate::{dlo, fphp, generate, gop, ordering, ordering_var, php, php_var, Family};
pub use graph::{parse_graph, write_graph, BipartiteGraph, Graph, GraphInput};

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitVec, LinEquation, LinSystem};
use crate::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("clause is tautological; its negation is inconsistent")]
    Tautological,
    #[error("assignment has {got} values, formula has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
}

/// A disjunction of linear literals `f = a`, stored sorted and without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinClause {
    nvars: usize,
    literals: Vec<LinEquation>,
}

impl LinClause {
    pub fn new(nvars: usize, mut literals: Vec<LinEquation>) -> Self {
        for l in &literals {
            assert_eq!(l.nvars(), nvars, "literal width does not match clause");
        }
        literals.sort();
        literals.dedup();
        LinClause { nvars, literals }
    }

    pub fn empty(nvars: usize) -> Self {
        LinClause { nvars, literals: Vec::new() }
    }

    /// Clause over single-variable literals; `(v, true)` is `x_v = 1`.
    pub fn from_vars(nvars: usize, lits: &[(usize, bool)]) -> Self {
        LinClause::new(nvars, lits.iter().map(|&(v, b)| LinEquation::var(nvars, v, b)).collect())
    }

    /// The clause `¬Φ`, falsified exactly by the solutions of `system`.
    pub fn negation_of(system: &LinSystem) -> Self {
        LinClause::new(system.nvars(), system.equations().iter().map(LinEquation::flipped).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn literals(&self) -> &[LinEquation] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: &LinEquation) -> bool {
        self.literals.binary_search(lit).is_ok()
    }

    pub fn position(&self, lit: &LinEquation) -> Option<usize> {
        self.literals.binary_search(lit).ok()
    }

    /// Syntactic tautology: some form with both right-hand sides, or `0 = 0`.
    pub fn is_tautological(&self) -> bool {
        self.literals.iter().any(LinEquation::is_trivially_true) || self.literals.windows(2).any(|w| w[0].form == w[1].form)
    }

    /// Semantic validity: no assignment falsifies the clause.
    pub fn is_valid(&self) -> bool {
        !self.negation().is_consistent()
    }

    /// `¬C` without the tautology check; may be inconsistent.
    pub fn negation(&self) -> LinSystem {
        LinSystem::new(self.nvars, self.literals.iter().map(LinEquation::flipped).collect())
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.literals.iter().any(|l| l.holds(assignment))
    }

    pub fn with_literal(&self, lit: LinEquation) -> LinClause {
        let mut lits = self.literals.clone();
        lits.push(lit);
        LinClause::new(self.nvars, lits)
    }

    pub fn without_literal(&self, lit: &LinEquation) -> Option<LinClause> {
        let pos = self.position(lit)?;
        let mut lits = self.literals.clone();
        lits.remove(pos);
        Some(LinClause { nvars: self.nvars, literals: lits })
    }

    pub fn union(&self, other: &LinClause) -> LinClause {
        let mut lits = self.literals.clone();
        lits.extend(other.literals.iter().cloned());
        LinClause::new(self.nvars, lits)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.literals.iter().filter_map(|l| l.form.ones().last()).max()
    }
}

impl fmt::Debug for LinClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// XLCNF clause syntax: space-separated literals, `F` for the empty clause.
impl fmt::Display for LinClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("F");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The system `¬C`: one flipped equation per literal. Rejects syntactic tautologies.
pub fn negate_clause(clause: &LinClause) -> Result<LinSystem, FormulaError> {
    if clause.is_tautological() {
        return Err(FormulaError::Tautological);
    }
    Ok(clause.negation())
}

pub fn evaluate_clause(clause: &LinClause, assignment: &[bool]) -> Result<bool, FormulaError> {
    if assignment.len() != clause.nvars() {
        return Err(FormulaError::LengthMismatch { expected: clause.nvars(), got: assignment.len() });
    }
    Ok(clause.evaluate(assignment))
}

/// A labeled linear CNF.
#[derive(Clone, PartialEq, Eq)]
pub struct LinCnf {
    nvars: usize,
    clauses: Vec<LinClause>,
    labels: Vec<Option<String>>,
    comments: Vec<String>,
}

impl LinCnf {
    pub fn new(nvars: usize) -> Self {
        LinCnf { nvars, clauses: Vec::new(), labels: Vec::new(), comments: Vec::new() }
    }

    pub fn from_clauses(nvars: usize, clauses: Vec<LinClause>) -> Self {
        let mut cnf = LinCnf::new(nvars);
        for c in clauses {
            cnf.push(c, None);
        }
        cnf
    }

    pub fn push(&mut self, clause: LinClause, label: Option<&str>) {
        assert_eq!(clause.nvars(), self.nvars, "clause width does not match formula");
        self.clauses.push(clause);
        self.labels.push(label.map(str::to_owned));
    }

    pub fn add_comment(&mut self, text: impl Into<String>) {
        self.comments.push(text.into());
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn clauses(&self) -> &[LinClause] {
        &self.clauses
    }

    pub fn clause(&self, i: usize) -> &LinClause {
        &self.clauses[i]
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels[i].as_deref()
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    /// Maximum clause width.
    pub fn r(&self) -> usize {
        self.clauses.iter().map(LinClause::width).max().unwrap_or(0)
    }

    pub fn indices_with_label(&self, label: &str) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.label(i) == Some(label)).collect()
    }

    pub fn label_set(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for l in self.labels.iter().flatten() {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool, FormulaError> {
        if assignment.len() != self.nvars {
            return Err(FormulaError::LengthMismatch { expected: self.nvars, got: assignment.len() });
        }
        Ok(self.clauses.iter().all(|c| c.evaluate(assignment)))
    }

    /// Index of the first clause falsified by `assignment`.
    pub fn first_falsified(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.evaluate(assignment))
    }
}

impl fmt::Debug for LinCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_xlcnf(self))
    }
}

/// Linear form with ones at the given 0-based variables.
pub fn form(nvars: usize, vars: &[usize]) -> BitVec {
    BitVec::from_indices(nvars, vars.iter().copied())
}
