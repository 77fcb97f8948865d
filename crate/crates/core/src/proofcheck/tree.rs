use std::fmt::Write as _;

use super::{add_literals, resolve, simplify, syn_weaken, weaken, Site, StepError};
use crate::formula::{parse_clause_tokens, parse_form, parse_literal, LinClause, LinCnf};
use crate::gf2::{BitVec, LinEquation};
use crate::text::{content_lines, tokens};
use crate::ParseError;

/// One node of a tree-like proof. Child ids are 0-based and must be smaller
/// than the node's own id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeStep {
    Input(usize),
    Resolve {
        left: usize,
        right: usize,
        pivot: BitVec,
    },
    Weaken {
        child: usize,
        target: LinClause,
    },
    SynWeaken {
        child: usize,
        literal: LinEquation,
    },
    Simplify {
        child: usize,
    },
    /// 0-based literal positions in the child's sorted clause.
    Add {
        child: usize,
        pos1: usize,
        pos2: usize,
    },
}

impl TreeStep {
    pub fn rule(&self) -> &'static str {
        match self {
            TreeStep::Input(_) => "input",
            TreeStep::Resolve { .. } => "res",
            TreeStep::Weaken { .. } => "weak",
            TreeStep::SynWeaken { .. } => "synweak",
            TreeStep::Simplify { .. } => "simp",
            TreeStep::Add { .. } => "add",
        }
    }

    pub fn children(&self) -> Vec<usize> {
        match self {
            TreeStep::Input(_) => vec![],
            TreeStep::Resolve { left, right, .. } => vec![*left, *right],
            TreeStep::Weaken { child, .. }
            | TreeStep::SynWeaken { child, .. }
            | TreeStep::Simplify { child }
            | TreeStep::Add { child, .. } => vec![*child],
        }
    }
}

/// A tree-like proof; the last node is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeProof {
    pub nvars: usize,
    pub nodes: Vec<TreeStep>,
}

impl TreeProof {
    pub fn new(nvars: usize) -> Self {
        TreeProof { nvars, nodes: Vec::new() }
    }

    /// Appends a node and returns its id.
    pub fn push(&mut self, step: TreeStep) -> usize {
        self.nodes.push(step);
        self.nodes.len() - 1
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeReport {
    pub ok: bool,
    pub size: usize,
    /// Maximum width over the clauses computed before the first error.
    pub width: usize,
    pub error: Option<StepError>,
    /// Clause of every node checked so far.
    pub clauses: Vec<LinClause>,
}

pub fn verify_tree_proof(proof: &TreeProof, cnf: &LinCnf) -> TreeReport {
    let mut clauses: Vec<LinClause> = Vec::with_capacity(proof.nodes.len());
    let mut parent: Vec<Option<usize>> = vec![None; proof.nodes.len()];
    let error = check_nodes(proof, cnf, &mut clauses, &mut parent).err();
    let width = clauses.iter().map(LinClause::width).max().unwrap_or(0);
    TreeReport { ok: error.is_none(), size: proof.nodes.len(), width, error, clauses }
}

fn check_nodes(
    proof: &TreeProof,
    cnf: &LinCnf,
    clauses: &mut Vec<LinClause>,
    parent: &mut [Option<usize>],
) -> Result<(), StepError> {
    if proof.nodes.is_empty() {
        return Err(StepError { site: Site::Node, index: 0, rule: "root", message: "proof has no nodes".into() });
    }
    if proof.nvars != cnf.nvars() {
        return Err(StepError {
            site: Site::Node,
            index: 0,
            rule: "root",
            message: format!("proof has {} variables, formula has {}", proof.nvars, cnf.nvars()),
        });
    }
    for (id, step) in proof.nodes.iter().enumerate() {
        let fail = |message: String| StepError { site: Site::Node, index: id + 1, rule: step.rule(), message };
        for c in step.children() {
            if c >= id {
                return Err(fail(format!("child {} is not an earlier node", c + 1)));
            }
            if let Some(p) = parent[c] {
                return Err(fail(format!("child {} is already used by node {}", c + 1, p + 1)));
            }
            parent[c] = Some(id);
        }
        let clause = match step {
            TreeStep::Input(i) => {
                if *i >= cnf.len() {
                    return Err(fail(format!("clause index {} out of range 1..={}", i + 1, cnf.len())));
                }
                Ok(cnf.clause(*i).clone())
            }
            TreeStep::Resolve { left, right, pivot } => resolve(&clauses[*left], &clauses[*right], pivot),
            TreeStep::Weaken { child, target } => weaken(&clauses[*child], target),
            TreeStep::SynWeaken { child, literal } => Ok(syn_weaken(&clauses[*child], literal)),
            TreeStep::Simplify { child } => simplify(&clauses[*child]),
            TreeStep::Add { child, pos1, pos2 } => add_literals(&clauses[*child], *pos1, *pos2),
        }
        .map_err(fail)?;
        clauses.push(clause);
    }
    let root = proof.nodes.len() - 1;
    if let Some(unused) = (0..root).find(|&i| parent[i].is_none()) {
        return Err(StepError {
            site: Site::Node,
            index: unused + 1,
            rule: proof.nodes[unused].rule(),
            message: "node is not used by any later node".into(),
        });
    }
    if !clauses[root].is_empty() {
        return Err(StepError {
            site: Site::Node,
            index: root + 1,
            rule: proof.nodes[root].rule(),
            message: format!("root clause is {}, not the empty clause", clauses[root]),
        });
    }
    Ok(())
}

/// Parses the XLP format; node ids are 1-based and must be consecutive.
pub fn parse_xlp(text: &str, nvars: usize) -> Result<TreeProof, ParseError> {
    let mut lines = content_lines(text);
    let Some((hline, htext)) = lines.next() else {
        return Err(ParseError::new(1, 1, "missing header p xlp tree <nnodes>"));
    };
    let h = tokens(htext, hline);
    if h.len() != 4 || h[0].text != "p" || h[1].text != "xlp" || h[2].text != "tree" {
        return Err(ParseError::new(hline, 1, "expected header: p xlp tree <nnodes>"));
    }
    let nnodes = h[3].parse_usize()?;
    let mut proof = TreeProof::new(nvars);
    let mut last = hline;
    for (line, body) in lines {
        last = line;
        let t = tokens(body, line);
        if t[0].text == "p" {
            return Err(ParseError::new(line, 1, "duplicate header"));
        }
        let id = t[0].parse_usize()?;
        if id != proof.nodes.len() + 1 {
            return Err(t[0].error(format!("expected node id {}, found {id}", proof.nodes.len() + 1)));
        }
        if id > nnodes {
            return Err(t[0].error(format!("more than the declared {nnodes} nodes")));
        }
        let Some(rule) = t.get(1) else {
            return Err(ParseError::new(line, body.len() + 1, "missing rule name"));
        };
        // Child references may point anywhere in 1..=nnodes; the verifier
        // reports forward and dangling references.
        let child = |i: usize| -> Result<usize, ParseError> {
            match t.get(i) {
                Some(tok) => {
                    tok.parse_usize().and_then(|v| if v == 0 { Err(tok.error("node ids are 1-based")) } else { Ok(v - 1) })
                }
                None => Err(ParseError::new(line, body.len() + 1, format!("{} needs more arguments", rule.text))),
            }
        };
        let arity = |n: usize| -> Result<(), ParseError> {
            if t.len() != n {
                let col = t.get(n).map_or(body.len() + 1, |x| x.column);
                return Err(ParseError::new(line, col, format!("{} takes {} arguments", rule.text, n - 2)));
            }
            Ok(())
        };
        let step = match rule.text {
            "input" => {
                arity(3)?;
                TreeStep::Input(child(2)?)
            }
            "res" => {
                arity(5)?;
                TreeStep::Resolve { left: child(2)?, right: child(3)?, pivot: parse_form(&t[4], nvars)? }
            }
            "weak" => {
                if t.len() < 4 {
                    return Err(ParseError::new(line, body.len() + 1, "weak needs a child and a clause"));
                }
                TreeStep::Weaken { child: child(2)?, target: parse_clause_tokens(&t[3..], nvars)? }
            }
            "synweak" => {
                arity(4)?;
                TreeStep::SynWeaken { child: child(2)?, literal: parse_literal(&t[3], nvars)? }
            }
            "add" => {
                arity(5)?;
                TreeStep::Add { child: child(2)?, pos1: child(3)?, pos2: child(4)? }
            }
            "simp" => {
                arity(3)?;
                TreeStep::Simplify { child: child(2)? }
            }
            other => return Err(rule.error(format!("unknown rule {other:?}"))),
        };
        proof.nodes.push(step);
    }
    if proof.nodes.len() != nnodes {
        return Err(ParseError::new(last, 1, format!("header declares {nnodes} nodes, found {}", proof.nodes.len())));
    }
    Ok(proof)
}

pub fn write_xlp(proof: &TreeProof) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p xlp tree {}", proof.nodes.len());
    for (i, step) in proof.nodes.iter().enumerate() {
        let _ = write!(out, "{} {}", i + 1, step.rule());
        let _ = match step {
            TreeStep::Input(c) => writeln!(out, " {}", c + 1),
            TreeStep::Resolve { left, right, pivot } => writeln!(out, " {} {} {}", left + 1, right + 1, pivot),
            TreeStep::Weaken { child, target } => writeln!(out, " {} {}", child + 1, target),
            TreeStep::SynWeaken { child, literal } => writeln!(out, " {} {}", child + 1, literal),
            TreeStep::Simplify { child } => writeln!(out, " {}", child + 1),
            TreeStep::Add { child, pos1, pos2 } => writeln!(out, " {} {} {}", child + 1, pos1 + 1, pos2 + 1),
        };
    }
    out
}
