//! Exhaustive search for minimal linear splitting trees.
//!
//! A splitting tree queries linear forms; a leaf names a clause falsified by
//! every point of the affine subspace cut out by its path. The optimum is
//! found by memoized recursion over canonical subspaces, and a tree converts
//! into a tree-like refutation with one resolution per query.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{LinClause, LinCnf};
use crate::games::{GameError, GameState, Prover};
use crate::gf2::{BitVec, Echelon, LinEquation, LinSystem, Push};
use crate::proofcheck::{TreeProof, TreeStep};
use crate::ParseError;

mod sexp;

pub use sexp::{parse_split_tree, write_split_tree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitTree {
    /// 0-based clause index.
    Leaf(usize),
    Node {
        form: BitVec,
        zero: Box<SplitTree>,
        one: Box<SplitTree>,
    },
}

impl SplitTree {
    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            SplitTree::Leaf(_) => 1,
            SplitTree::Node { zero, one, .. } => 1 + zero.size() + one.size(),
        }
    }

    /// Longest root-to-leaf query count.
    pub fn depth(&self) -> usize {
        match self {
            SplitTree::Leaf(_) => 0,
            SplitTree::Node { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("formula has {nvars} variables; the oracle is limited to {max}")]
    TooManyVariables { nvars: usize, max: usize },
    #[error("formula is satisfiable")]
    Satisfiable { assignment: Vec<bool> },
    #[error("budget of {budget} subspaces exceeded; best tree found has size {upper_bound}")]
    BudgetExceeded { budget: u64, upper_bound: usize, tree: SplitTree },
    #[error("invalid tree at {path}: {message}")]
    InvalidTree { path: String, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Maximum number of memoized subspaces (or recursive calls without memo).
    pub budget: u64,
    pub max_vars: usize,
    pub memo: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: 10_000_000, max_vars: 8, memo: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub size: usize,
    pub tree: SplitTree,
    /// Subspaces evaluated.
    pub explored: u64,
}

struct Search<'a> {
    cnf: &'a LinCnf,
    memo: HashMap<Vec<u8>, (usize, BitVec)>,
    use_memo: bool,
    calls: u64,
    budget: u64,
}

enum Stop {
    Budget,
    Satisfiable(Vec<bool>),
}

/// Exact minimum size of a splitting tree for `cnf`. Among optimal queries
/// at a subspace the least form (by variable-index list) is chosen, where
/// forms are taken modulo the span of the subspace's constraints.
pub fn min_split_tree(cnf: &LinCnf, opts: &OracleOptions) -> Result<SplitResult, OracleError> {
    let n = cnf.nvars();
    if n > opts.max_vars {
        return Err(OracleError::TooManyVariables { nvars: n, max: opts.max_vars });
    }
    let mut s = Search { cnf, memo: HashMap::new(), use_memo: opts.memo, calls: 0, budget: opts.budget };
    let mut e = Echelon::new(n);
    match s.best(&mut e) {
        Ok(size) => {
            let tree = s.rebuild(&mut e);
            Ok(SplitResult { size, tree, explored: s.calls })
        }
        Err(Stop::Satisfiable(assignment)) => Err(OracleError::Satisfiable { assignment }),
        Err(Stop::Budget) => {
            let tree = greedy_tree(cnf, &mut Echelon::new(n))?;
            Err(OracleError::BudgetExceeded { budget: opts.budget, upper_bound: tree.size(), tree })
        }
    }
}

fn falsified_clause(cnf: &LinCnf, e: &Echelon) -> Option<usize> {
    cnf.clauses().iter().position(|c| !c.is_tautological() && c.literals().iter().all(|l| e.value_of(&l.form) == Some(!l.rhs)))
}

/// Nonzero forms supported on the free variables of `sys`: one per class of
/// forms that are non-constant on its solutions.
fn split_forms(sys: &LinSystem) -> Vec<BitVec> {
    let n = sys.nvars();
    let pivots: Vec<usize> = sys.pivots().collect();
    let free: Vec<usize> = (0..n).filter(|v| !pivots.contains(v)).collect();
    let mut forms: Vec<BitVec> = (1u64..1 << free.len())
        .map(|mask| BitVec::from_indices(n, (0..free.len()).filter(|&b| mask >> b & 1 == 1).map(|b| free[b])))
        .collect();
    forms.sort();
    forms
}

impl Search<'_> {
    fn best(&mut self, e: &mut Echelon) -> Result<usize, Stop> {
        if falsified_clause(self.cnf, e).is_some() {
            return Ok(1);
        }
        let sys = e.to_system();
        let key = sys.key();
        if self.use_memo {
            if let Some(&(size, _)) = self.memo.get(&key) {
                return Ok(size);
            }
        }
        self.calls += 1;
        if self.calls > self.budget {
            return Err(Stop::Budget);
        }
        let forms = split_forms(&sys);
        if forms.is_empty() {
            return Err(Stop::Satisfiable(e.solution()));
        }
        let mut best: Option<(usize, BitVec)> = None;
        for f in forms {
            let mut total = 1;
            for value in [false, true] {
                let mark = e.mark();
                e.push(&LinEquation::new(f.clone(), value));
                let r = self.best(e);
                e.undo_to(mark);
                total += r?;
            }
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, f));
            }
        }
        let (size, f) = best.expect("at least one form");
        // the best form is kept for rebuilding even when lookups are off
        self.memo.insert(key, (size, f));
        Ok(size)
    }

    fn rebuild(&mut self, e: &mut Echelon) -> SplitTree {
        if let Some(i) = falsified_clause(self.cnf, e) {
            return SplitTree::Leaf(i);
        }
        let key = e.to_system().key();
        let form = self.memo[&key].1.clone();
        let mut child = |value: bool, s: &mut Self| {
            let mark = e.mark();
            e.push(&LinEquation::new(form.clone(), value));
            let t = s.rebuild(e);
            e.undo_to(mark);
            t
        };
        let zero = child(false, self);
        let one = child(true, self);
        SplitTree::Node { form, zero: Box::new(zero), one: Box::new(one) }
    }
}

/// Splits on the first free variable until a clause dies.
fn greedy_tree(cnf: &LinCnf, e: &mut Echelon) -> Result<SplitTree, OracleError> {
    if let Some(i) = falsified_clause(cnf, e) {
        return Ok(SplitTree::Leaf(i));
    }
    let n = cnf.nvars();
    let Some(v) = (0..n).find(|&v| e.value_of(&BitVec::unit(n, v)).is_none()) else {
        return Err(OracleError::Satisfiable { assignment: e.solution() });
    };
    let form = BitVec::unit(n, v);
    let mut sub = |value: bool| {
        let mark = e.mark();
        e.push(&LinEquation::var(n, v, value));
        let t = greedy_tree(cnf, e);
        e.undo_to(mark);
        t
    };
    let zero = Box::new(sub(false)?);
    let one = Box::new(sub(true)?);
    Ok(SplitTree::Node { form, zero, one })
}

/// Checks the leaf and node invariants of `tree` for `cnf`.
pub fn check_split_tree(tree: &SplitTree, cnf: &LinCnf) -> Result<(), OracleError> {
    let mut e = Echelon::new(cnf.nvars());
    check_at(tree, cnf, &mut e, &mut String::from("root"))
}

fn check_at(tree: &SplitTree, cnf: &LinCnf, e: &mut Echelon, path: &mut String) -> Result<(), OracleError> {
    let invalid = |path: &str, message: String| OracleError::InvalidTree { path: path.to_string(), message };
    match tree {
        SplitTree::Leaf(i) => {
            let Some(c) = cnf.clauses().get(*i) else {
                return Err(invalid(path, format!("clause {} does not exist", i + 1)));
            };
            if c.is_tautological() || !c.literals().iter().all(|l| e.value_of(&l.form) == Some(!l.rhs)) {
                return Err(invalid(path, format!("clause {} is not falsified on the whole subspace", i + 1)));
            }
            Ok(())
        }
        SplitTree::Node { form, zero, one } => {
            if form.len() != cnf.nvars() {
                return Err(invalid(path, "form has the wrong number of variables".into()));
            }
            if e.value_of(form).is_some() {
                return Err(invalid(path, format!("form {form} is constant on the subspace")));
            }
            for (value, sub) in [(false, zero), (true, one)] {
                let mark = e.mark();
                let len = path.len();
                let pushed = e.push(&LinEquation::new(form.clone(), value));
                debug_assert_ne!(pushed, Push::Conflict);
                path.push_str(if value { ".1" } else { ".0" });
                let r = check_at(sub, cnf, e, path);
                path.truncate(len);
                e.undo_to(mark);
                r?;
            }
            Ok(())
        }
    }
}

/// Converts a splitting tree into a tree-like refutation. The node for a
/// subtree with path system Φ derives the clause ¬Φ.
pub fn split_tree_to_proof(tree: &SplitTree, cnf: &LinCnf) -> Result<TreeProof, OracleError> {
    check_split_tree(tree, cnf)?;
    let mut proof = TreeProof::new(cnf.nvars());
    let mut path = Vec::new();
    emit(tree, cnf, &mut path, &mut proof);
    Ok(proof)
}

fn emit(tree: &SplitTree, cnf: &LinCnf, path: &mut Vec<LinEquation>, proof: &mut TreeProof) -> usize {
    let n = cnf.nvars();
    match tree {
        SplitTree::Leaf(i) => {
            let input = proof.push(TreeStep::Input(*i));
            let target = LinClause::negation_of(&LinSystem::new(n, path.clone()));
            if &target == cnf.clause(*i) {
                input
            } else {
                proof.push(TreeStep::Weaken { child: input, target })
            }
        }
        SplitTree::Node { form, zero, one } => {
            path.push(LinEquation::new(form.clone(), false));
            let left = emit(zero, cnf, path, proof);
            path.pop();
            path.push(LinEquation::new(form.clone(), true));
            let right = emit(one, cnf, path, proof);
            path.pop();
            proof.push(TreeStep::Resolve { left, right, pivot: form.clone() })
        }
    }
}

/// Plays the queries of a splitting tree, following the settled values.
#[derive(Clone, Debug)]
pub struct TreeProver {
    tree: SplitTree,
}

impl TreeProver {
    pub fn new(tree: SplitTree) -> Self {
        TreeProver { tree }
    }

    fn current(&self, state: &GameState) -> &SplitTree {
        let mut t = &self.tree;
        for r in state.transcript() {
            match t {
                SplitTree::Node { form, zero, one } if *form == r.form => {
                    t = if r.value { one } else { zero };
                }
                _ => break,
            }
        }
        t
    }
}

impl Prover for TreeProver {
    fn next_form(&mut self, state: &GameState, _cnf: &LinCnf) -> Result<Option<BitVec>, GameError> {
        Ok(match self.current(state) {
            SplitTree::Node { form, .. } => Some(form.clone()),
            SplitTree::Leaf(_) => None,
        })
    }

    /// Follows the smaller subtree.
    fn choose(&mut self, state: &GameState, _form: &BitVec) -> Result<bool, GameError> {
        Ok(match self.current(state) {
            SplitTree::Node { zero, one, .. } => one.size() < zero.size(),
            SplitTree::Leaf(_) => false,
        })
    }
}

impl fmt::Display for SplitTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_split_tree(self))
    }
}
