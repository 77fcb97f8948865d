use thiserror::Error;

use super::{
    add_literals, check_clause_implication, simplify, syn_weaken, verify_space_script, Site, SpaceScript, SpaceStep, StepError,
};
use crate::formula::{LinClause, LinCnf};
use crate::gf2::{BitVec, LinEquation};

/// A syntactic step applied to the current clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynStep {
    SynWeaken(LinEquation),
    /// 0-based positions, as for [`super::add_literals`].
    Add {
        pos1: usize,
        pos2: usize,
    },
    Simplify,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesugarError {
    #[error("{target} is not implied by {premise}")]
    NotImplied { premise: LinClause, target: LinClause },
    #[error("the negation of {premise} is not in the span of the negation of {target}")]
    NotInSpan { premise: LinClause, target: LinClause },
}

/// Rewrites the semantic weakening `C ⊢ D` into syntactic weakenings,
/// additions and simplifications.
///
/// First every literal of `D` missing from `C` is added. Then each literal
/// `g = 1 - b` of `C` outside `D` is cancelled: `g = b` is a sum of
/// independent equations of `¬D`, so adding the matching `D` literals into it
/// one at a time ends at `0 = 1`, which is simplified away. Literals that
/// collide with an existing literal on the way merge into it and are done.
pub fn desugar_weakening(c: &LinClause, d: &LinClause) -> Result<Vec<SynStep>, DesugarError> {
    if !check_clause_implication(c, d) {
        return Err(DesugarError::NotImplied { premise: c.clone(), target: d.clone() });
    }
    let span = Span::new(d.literals());
    let mut plan = Vec::new();
    for lit in c.literals() {
        if d.contains(lit) {
            continue;
        }
        match span.express(&lit.flipped()) {
            Some(subset) => plan.push((lit.clone(), subset)),
            None => return Err(DesugarError::NotInSpan { premise: c.clone(), target: d.clone() }),
        }
    }

    let mut steps = Vec::new();
    let mut state = c.clone();
    for lit in d.literals() {
        if !state.contains(lit) {
            steps.push(SynStep::SynWeaken(lit.clone()));
            state = syn_weaken(&state, lit);
        }
    }
    for (lit, subset) in plan {
        if !state.contains(&lit) {
            continue;
        }
        let mut cur = lit;
        let mut merged = false;
        for i in subset {
            let dl = &d.literals()[i];
            let pos1 = state.position(dl).expect("target literals stay present");
            let pos2 = state.position(&cur).expect("current literal is present");
            steps.push(SynStep::Add { pos1, pos2 });
            let next = dl.add(&cur).flipped();
            merged = state.contains(&next);
            state = add_literals(&state, pos1, pos2).expect("positions are valid");
            cur = next;
            if merged {
                break;
            }
        }
        if !merged {
            debug_assert!(cur.is_trivially_false());
            steps.push(SynStep::Simplify);
            state = simplify(&state).expect("literal 0=1 is present");
        }
    }
    debug_assert_eq!(&state, d);
    Ok(steps)
}

/// Applies `steps` to `c`.
pub fn replay_syntactic(c: &LinClause, steps: &[SynStep]) -> Result<LinClause, String> {
    let mut state = c.clone();
    for s in steps {
        state = match s {
            SynStep::SynWeaken(l) => syn_weaken(&state, l),
            SynStep::Add { pos1, pos2 } => add_literals(&state, *pos1, *pos2)?,
            SynStep::Simplify => simplify(&state)?,
        };
    }
    Ok(state)
}

/// Independent equations among the negated literals of a clause, with the
/// combination of literal indices that produced each basis row.
struct Span {
    rows: Vec<(BitVec, Vec<usize>)>,
}

impl Span {
    fn new(literals: &[LinEquation]) -> Self {
        let mut span = Span { rows: Vec::new() };
        for (i, l) in literals.iter().enumerate() {
            let v = augmented(&l.flipped());
            let (rest, combo) = span.reduce(&v);
            if !rest.is_zero() {
                let mut combo = combo;
                combo.push(i);
                combo.sort_unstable();
                span.rows.push((rest, combo));
            }
        }
        span
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, Vec<usize>) {
        let mut acc = v.clone();
        let mut combo: Vec<usize> = Vec::new();
        for (row, c) in &self.rows {
            let p = row.first_one().expect("basis rows are nonzero");
            if acc.get(p) {
                acc.xor_assign(row);
                combo = symmetric_difference(&combo, c);
            }
        }
        (acc, combo)
    }

    /// Indices of literals whose negations sum to `eq`.
    fn express(&self, eq: &LinEquation) -> Option<Vec<usize>> {
        let (rest, combo) = self.reduce(&augmented(eq));
        rest.is_zero().then_some(combo)
    }
}

fn augmented(eq: &LinEquation) -> BitVec {
    let n = eq.nvars();
    let mut v = BitVec::zeros(n + 1);
    for i in eq.form.ones() {
        v.set(i, true);
    }
    v.set(n, eq.rhs);
    v
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().filter(|x| !b.contains(x)).chain(b.iter().filter(|x| !a.contains(x))).copied().collect();
    out.sort_unstable();
    out
}

/// Replaces every `weak` step of a valid script by its syntactic expansion.
/// Each intermediate clause replaces the previous one, so the configuration
/// grows by at most one clause over the original script.
pub fn desugar_space_script(script: &SpaceScript, cnf: &LinCnf) -> Result<SpaceScript, StepError> {
    let report = verify_space_script(script, cnf);
    if let Some(e) = report.error {
        return Err(e);
    }
    let mut out = SpaceScript::new(script.nvars);
    let mut map: Vec<usize> = Vec::new();
    let mut next = 0usize;
    let mut fresh = |out: &mut SpaceScript, step: SpaceStep| {
        out.steps.push(step);
        next += 1;
        next - 1
    };
    for (i, step) in script.steps.iter().enumerate() {
        let new_id = match step {
            SpaceStep::Erase(id) => {
                out.steps.push(SpaceStep::Erase(map[*id]));
                continue;
            }
            SpaceStep::Load(c) => fresh(&mut out, SpaceStep::Load(*c)),
            SpaceStep::Res { a, b, pivot } => fresh(&mut out, SpaceStep::Res { a: map[*a], b: map[*b], pivot: pivot.clone() }),
            SpaceStep::SynWeak { id, literal } => fresh(&mut out, SpaceStep::SynWeak { id: map[*id], literal: literal.clone() }),
            SpaceStep::Add { id, pos1, pos2 } => fresh(&mut out, SpaceStep::Add { id: map[*id], pos1: *pos1, pos2: *pos2 }),
            SpaceStep::Simp { id } => fresh(&mut out, SpaceStep::Simp { id: map[*id] }),
            SpaceStep::Weak { id, target } => {
                let source = &report.clauses[*id];
                let syn = desugar_weakening(source, target).map_err(|e| StepError {
                    site: Site::Step,
                    index: i + 1,
                    rule: "weak",
                    message: e.to_string(),
                })?;
                if syn.is_empty() {
                    fresh(&mut out, SpaceStep::Weak { id: map[*id], target: target.clone() })
                } else {
                    let mut prev = map[*id];
                    for (j, s) in syn.iter().enumerate() {
                        let step = match s {
                            SynStep::SynWeaken(l) => SpaceStep::SynWeak { id: prev, literal: l.clone() },
                            SynStep::Add { pos1, pos2 } => SpaceStep::Add { id: prev, pos1: *pos1, pos2: *pos2 },
                            SynStep::Simplify => SpaceStep::Simp { id: prev },
                        };
                        let n = fresh(&mut out, step);
                        if j > 0 {
                            out.steps.push(SpaceStep::Erase(prev));
                        }
                        prev = n;
                    }
                    prev
                }
            }
        };
        map.push(new_id);
    }
    Ok(out)
}
