//! Checking of tree-like Res(⊕) proofs and space scripts, and the rewriting of
//! semantic weakening into syntactic steps.
//!
//! Clauses are literal sets, so every derived clause is canonicalized
//! (sorted, duplicates merged) before it is compared or stored.

mod desugar;
mod space;
mod tree;

pub use desugar::{desugar_space_script, desugar_weakening, replay_syntactic, DesugarError, SynStep};
pub use space::{parse_xls, tree_to_space_script, verify_space_script, write_xls, SpaceReport, SpaceScript, SpaceStep};
pub use tree::{parse_xlp, verify_tree_proof, write_xlp, TreeProof, TreeReport, TreeStep};

use std::fmt;

use thiserror::Error;

use crate::formula::LinClause;
use crate::gf2::{BitVec, LinEquation};

/// Where a diagnostic points: a tree-proof node or a script step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Node,
    Step,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Site::Node => "node",
            Site::Step => "step",
        })
    }
}

/// The first invalid node or step; `index` is 1-based as in the text formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{site} {index} ({rule}): {message}")]
pub struct StepError {
    pub site: Site,
    pub index: usize,
    pub rule: &'static str,
    pub message: String,
}

/// `C ⊨ D`: either `D` is valid, or `¬D` implies every equation of `¬C`.
pub fn check_clause_implication(c: &LinClause, d: &LinClause) -> bool {
    let neg_d = d.negation();
    if !neg_d.is_consistent() {
        return true;
    }
    c.literals().iter().all(|l| neg_d.implies(&l.flipped()))
}

/// Resolution on `pivot`: one premise contains `pivot = a`, the other
/// `pivot = 1 - a`; the result is the union of the remaining literals.
pub fn resolve(left: &LinClause, right: &LinClause, pivot: &BitVec) -> Result<LinClause, String> {
    let lit0 = LinEquation::new(pivot.clone(), false);
    let lit1 = LinEquation::new(pivot.clone(), true);
    let orientation = [(&lit0, &lit1), (&lit1, &lit0)].into_iter().find(|(l, r)| left.contains(l) && right.contains(r));
    let Some((l, r)) = orientation else {
        return Err(if left.contains(&lit0) {
            format!("right premise lacks literal {lit1}")
        } else if left.contains(&lit1) {
            format!("right premise lacks literal {lit0}")
        } else {
            format!("left premise lacks literal {lit0} or {lit1}")
        });
    };
    let a = left.without_literal(l).expect("checked above");
    let b = right.without_literal(r).expect("checked above");
    Ok(a.union(&b))
}

pub fn weaken(c: &LinClause, target: &LinClause) -> Result<LinClause, String> {
    if check_clause_implication(c, target) {
        Ok(target.clone())
    } else {
        Err(format!("{target} is not implied by {c}"))
    }
}

pub fn syn_weaken(c: &LinClause, literal: &LinEquation) -> LinClause {
    c.with_literal(literal.clone())
}

/// Drops the literal `0 = 1`.
pub fn simplify(c: &LinClause) -> Result<LinClause, String> {
    let falsum = LinEquation::new(BitVec::zeros(c.nvars()), true);
    c.without_literal(&falsum).ok_or_else(|| format!("{c} has no literal 0=1"))
}

/// Replaces the literal at `pos2` (`f2 = a2`) with `f1 + f2 = a1 + a2 + 1`,
/// where `f1 = a1` is the literal at `pos1`. Positions are 0-based.
pub fn add_literals(c: &LinClause, pos1: usize, pos2: usize) -> Result<LinClause, String> {
    let w = c.width();
    if pos1 >= w || pos2 >= w {
        return Err(format!("position {} out of range for a clause of width {w}", pos1.max(pos2) + 1));
    }
    if pos1 == pos2 {
        return Err("the two positions must differ".into());
    }
    let l1 = &c.literals()[pos1];
    let l2 = &c.literals()[pos2];
    let sum = l1.add(l2).flipped();
    let rest = c.without_literal(l2).expect("literal at pos2 is present");
    Ok(rest.with_literal(sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::form;

    pub(crate) fn lit(n: usize, vars: &[usize], rhs: bool) -> LinEquation {
        LinEquation::new(form(n, vars), rhs)
    }

    pub(crate) fn clause(n: usize, lits: &[(&[usize], bool)]) -> LinClause {
        LinClause::new(n, lits.iter().map(|(v, b)| lit(n, v, *b)).collect())
    }

    fn brute_implies(c: &LinClause, d: &LinClause) -> bool {
        let n = c.nvars();
        (0..1u32 << n).all(|m| {
            let a: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            !c.evaluate(&a) || d.evaluate(&a)
        })
    }

    #[test]
    fn implication_examples() {
        let c = clause(2, &[(&[0], true)]);
        assert!(check_clause_implication(&c, &clause(2, &[(&[0], true), (&[1], false)])));
        assert!(check_clause_implication(&c, &clause(2, &[(&[0, 1], true), (&[1], true)])));
        assert!(!check_clause_implication(&c, &clause(2, &[(&[1], true)])));
    }

    #[test]
    fn resolution_shapes() {
        let a = clause(2, &[(&[0], true)]);
        let b = clause(2, &[(&[0], false)]);
        assert!(resolve(&a, &b, &form(2, &[0])).unwrap().is_empty());
        assert!(resolve(&b, &a, &form(2, &[0])).unwrap().is_empty());
        let err = resolve(&a, &clause(2, &[(&[1], true)]), &form(2, &[0])).unwrap_err();
        assert_eq!(err, "right premise lacks literal 1=0");
    }

    #[test]
    fn addition_is_sound() {
        let c = clause(3, &[(&[0], true), (&[1], false), (&[2], true)]);
        for p in 0..3 {
            for q in 0..3 {
                if p != q {
                    let d = add_literals(&c, p, q).unwrap();
                    assert!(brute_implies(&c, &d));
                }
            }
        }
        assert!(add_literals(&c, 0, 0).is_err());
        assert!(add_literals(&c, 0, 3).is_err());
    }

    #[test]
    fn simplification_needs_falsum() {
        let c = LinClause::new(2, vec![lit(2, &[], true), lit(2, &[1], true)]);
        assert_eq!(simplify(&c).unwrap(), clause(2, &[(&[1], true)]));
        assert!(simplify(&clause(2, &[(&[1], true)])).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn clause_over(n: usize) -> impl Strategy<Value = LinClause> {
            prop::collection::vec((prop::collection::vec(any::<bool>(), n), any::<bool>()), 0..4).prop_map(move |lits| {
                LinClause::new(n, lits.into_iter().map(|(bits, rhs)| LinEquation::new(BitVec::from_bools(&bits), rhs)).collect())
            })
        }

        fn pair() -> impl Strategy<Value = (LinClause, LinClause)> {
            (1usize..=12).prop_flat_map(|n| (clause_over(n), clause_over(n)))
        }

        proptest! {
            #[test]
            fn implication_matches_enumeration((c, d) in pair()) {
                prop_assert_eq!(check_clause_implication(&c, &d), brute_implies(&c, &d));
            }
        }
    }
}
