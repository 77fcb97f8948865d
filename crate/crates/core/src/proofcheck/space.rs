use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{add_literals, resolve, simplify, syn_weaken, weaken, Site, StepError, TreeProof, TreeStep};
use crate::formula::{parse_clause_tokens, parse_form, parse_literal, LinClause, LinCnf};
use crate::gf2::{BitVec, LinEquation};
use crate::text::{content_lines, tokens};
use crate::ParseError;

/// One configuration operation. Every step except `Erase` produces a clause
/// and assigns it the next id (0-based internally, 1-based in text).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceStep {
    Load(usize),
    Res { a: usize, b: usize, pivot: BitVec },
    Weak { id: usize, target: LinClause },
    SynWeak { id: usize, literal: LinEquation },
    Add { id: usize, pos1: usize, pos2: usize },
    Simp { id: usize },
    Erase(usize),
}

impl SpaceStep {
    pub fn rule(&self) -> &'static str {
        match self {
            SpaceStep::Load(_) => "load",
            SpaceStep::Res { .. } => "res",
            SpaceStep::Weak { .. } => "weak",
            SpaceStep::SynWeak { .. } => "synweak",
            SpaceStep::Add { .. } => "add",
            SpaceStep::Simp { .. } => "simp",
            SpaceStep::Erase(_) => "erase",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceScript {
    pub nvars: usize,
    pub steps: Vec<SpaceStep>,
}

impl SpaceScript {
    pub fn new(nvars: usize) -> Self {
        SpaceScript { nvars, steps: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub ok: bool,
    /// Largest configuration reached before the first error.
    pub space: usize,
    pub refuted: bool,
    pub error: Option<StepError>,
    /// Clause produced under each id, in id order.
    pub clauses: Vec<LinClause>,
}

pub fn verify_space_script(script: &SpaceScript, cnf: &LinCnf) -> SpaceReport {
    let mut config = BTreeSet::new();
    let mut clauses: Vec<LinClause> = Vec::new();
    let mut space = 0;
    let mut refuted = false;
    let mut error = None;
    if script.nvars != cnf.nvars() {
        error = Some(StepError {
            site: Site::Step,
            index: 0,
            rule: "header",
            message: format!("script has {} variables, formula has {}", script.nvars, cnf.nvars()),
        });
    }
    for (i, step) in script.steps.iter().enumerate() {
        if error.is_some() {
            break;
        }
        let fail = |message: String| StepError { site: Site::Step, index: i + 1, rule: step.rule(), message };
        let present = |id: &usize| -> Result<(), StepError> {
            if config.contains(id) {
                Ok(())
            } else {
                Err(fail(format!("clause {} is not in the configuration", id + 1)))
            }
        };
        let produced = match step {
            SpaceStep::Erase(id) => match present(id) {
                Ok(()) => {
                    config.remove(id);
                    continue;
                }
                Err(e) => Err(e),
            },
            SpaceStep::Load(c) => {
                if *c < cnf.len() {
                    Ok(cnf.clause(*c).clone())
                } else {
                    Err(fail(format!("clause index {} out of range 1..={}", c + 1, cnf.len())))
                }
            }
            SpaceStep::Res { a, b, pivot } => {
                present(a).and(present(b)).and_then(|_| resolve(&clauses[*a], &clauses[*b], pivot).map_err(fail))
            }
            SpaceStep::Weak { id, target } => present(id).and_then(|_| weaken(&clauses[*id], target).map_err(fail)),
            SpaceStep::SynWeak { id, literal } => present(id).map(|_| syn_weaken(&clauses[*id], literal)),
            SpaceStep::Add { id, pos1, pos2 } => {
                present(id).and_then(|_| add_literals(&clauses[*id], *pos1, *pos2).map_err(fail))
            }
            SpaceStep::Simp { id } => present(id).and_then(|_| simplify(&clauses[*id]).map_err(fail)),
        };
        match produced {
            Ok(c) => {
                refuted |= c.is_empty();
                config.insert(clauses.len());
                clauses.push(c);
                space = space.max(config.len());
            }
            Err(e) => error = Some(e),
        }
    }
    SpaceReport { ok: error.is_none(), space, refuted, error, clauses }
}

/// Evaluates a tree proof depth-first, erasing premises as soon as they are
/// consumed. Uses only the nodes reachable from the root.
pub fn tree_to_space_script(proof: &TreeProof) -> SpaceScript {
    let mut script = SpaceScript::new(proof.nvars);
    let mut next = 0usize;
    if !proof.nodes.is_empty() {
        emit(proof, proof.nodes.len() - 1, &mut script, &mut next);
    }
    script
}

fn emit(proof: &TreeProof, node: usize, script: &mut SpaceScript, next: &mut usize) -> usize {
    let kids: Vec<usize> = proof.nodes[node].children().into_iter().map(|c| emit(proof, c, script, next)).collect();
    let step = match &proof.nodes[node] {
        TreeStep::Input(i) => SpaceStep::Load(*i),
        TreeStep::Resolve { pivot, .. } => SpaceStep::Res { a: kids[0], b: kids[1], pivot: pivot.clone() },
        TreeStep::Weaken { target, .. } => SpaceStep::Weak { id: kids[0], target: target.clone() },
        TreeStep::SynWeaken { literal, .. } => SpaceStep::SynWeak { id: kids[0], literal: literal.clone() },
        TreeStep::Simplify { .. } => SpaceStep::Simp { id: kids[0] },
        TreeStep::Add { pos1, pos2, .. } => SpaceStep::Add { id: kids[0], pos1: *pos1, pos2: *pos2 },
    };
    script.steps.push(step);
    let id = *next;
    *next += 1;
    for k in kids {
        script.steps.push(SpaceStep::Erase(k));
    }
    id
}

/// Parses the XLS format. Besides `load`, `res`, `weak` and `erase` it
/// accepts the syntactic steps `synweak <id> <literal>`, `add <id> <p1> <p2>`
/// and `simp <id>`.
pub fn parse_xls(text: &str, nvars: usize) -> Result<SpaceScript, ParseError> {
    let mut lines = content_lines(text);
    let Some((hline, htext)) = lines.next() else {
        return Err(ParseError::new(1, 1, "missing header p xls"));
    };
    let h = tokens(htext, hline);
    if h.len() != 2 || h[0].text != "p" || h[1].text != "xls" {
        return Err(ParseError::new(hline, 1, "expected header: p xls"));
    }
    let mut script = SpaceScript::new(nvars);
    for (line, body) in lines {
        let t = tokens(body, line);
        let op = &t[0];
        if op.text == "p" {
            return Err(op.error("duplicate header"));
        }
        let num = |i: usize| -> Result<usize, ParseError> {
            let tok =
                t.get(i).ok_or_else(|| ParseError::new(line, body.len() + 1, format!("{} needs more arguments", op.text)))?;
            match tok.parse_usize()? {
                0 => Err(tok.error("ids and indices are 1-based")),
                v => Ok(v - 1),
            }
        };
        let arity = |n: usize| -> Result<(), ParseError> {
            if t.len() != n {
                let col = t.get(n).map_or(body.len() + 1, |x| x.column);
                return Err(ParseError::new(line, col, format!("{} takes {} arguments", op.text, n - 1)));
            }
            Ok(())
        };
        let step = match op.text {
            "load" => {
                arity(2)?;
                SpaceStep::Load(num(1)?)
            }
            "res" => {
                arity(4)?;
                SpaceStep::Res { a: num(1)?, b: num(2)?, pivot: parse_form(&t[3], nvars)? }
            }
            "weak" => {
                if t.len() < 3 {
                    return Err(ParseError::new(line, body.len() + 1, "weak needs an id and a clause"));
                }
                SpaceStep::Weak { id: num(1)?, target: parse_clause_tokens(&t[2..], nvars)? }
            }
            "synweak" => {
                arity(3)?;
                SpaceStep::SynWeak { id: num(1)?, literal: parse_literal(&t[2], nvars)? }
            }
            "add" => {
                arity(4)?;
                SpaceStep::Add { id: num(1)?, pos1: num(2)?, pos2: num(3)? }
            }
            "simp" => {
                arity(2)?;
                SpaceStep::Simp { id: num(1)? }
            }
            "erase" => {
                arity(2)?;
                SpaceStep::Erase(num(1)?)
            }
            other => return Err(op.error(format!("unknown operation {other:?}"))),
        };
        script.steps.push(step);
    }
    Ok(script)
}

pub fn write_xls(script: &SpaceScript) -> String {
    let mut out = String::from("p xls\n");
    for step in &script.steps {
        let _ = match step {
            SpaceStep::Load(c) => writeln!(out, "load {}", c + 1),
            SpaceStep::Res { a, b, pivot } => writeln!(out, "res {} {} {}", a + 1, b + 1, pivot),
            SpaceStep::Weak { id, target } => writeln!(out, "weak {} {}", id + 1, target),
            SpaceStep::SynWeak { id, literal } => writeln!(out, "synweak {} {}", id + 1, literal),
            SpaceStep::Add { id, pos1, pos2 } => writeln!(out, "add {} {} {}", id + 1, pos1 + 1, pos2 + 1),
            SpaceStep::Simp { id } => writeln!(out, "simp {}", id + 1),
            SpaceStep::Erase(id) => writeln!(out, "erase {}", id + 1),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_xlcnf;
    use crate::proofcheck::parse_xlp;

    #[test]
    fn load_load_resolve() {
        let cnf = parse_xlcnf("p xlcnf 1 2\n1=1\n1=0\n").unwrap();
        let s = parse_xls("p xls\nload 1\nload 2\nres 1 2 1\n", 1).unwrap();
        let r = verify_space_script(&s, &cnf);
        assert!(r.ok && r.refuted);
        assert_eq!(r.space, 3);
        assert_eq!(write_xls(&s), "p xls\nload 1\nload 2\nres 1 2 1\n");
    }

    #[test]
    fn erase_of_absent_clause_is_rejected() {
        let cnf = parse_xlcnf("p xlcnf 1 2\n1=1\n1=0\n").unwrap();
        let s = parse_xls("p xls\nload 1\nerase 1\nerase 1\n", 1).unwrap();
        let e = verify_space_script(&s, &cnf).error.unwrap();
        assert_eq!((e.index, e.rule), (3, "erase"));
        let s = parse_xls("p xls\nload 1\nerase 2\n", 1).unwrap();
        assert_eq!(verify_space_script(&s, &cnf).error.unwrap().index, 2);
    }

    #[test]
    fn tree_conversion_erases_premises() {
        let cnf = parse_xlcnf("p xlcnf 1 2\n1=1\n1=0\n").unwrap();
        let p = parse_xlp("p xlp tree 3\n1 input 1\n2 input 2\n3 res 1 2 1\n", 1).unwrap();
        let s = tree_to_space_script(&p);
        assert_eq!(write_xls(&s), "p xls\nload 1\nload 2\nres 1 2 1\nerase 1\nerase 2\n");
        let r = verify_space_script(&s, &cnf);
        assert!(r.ok && r.refuted);
        assert_eq!(r.space, 3);
    }
}
