use std::fmt::Write as _;

use super::{FormulaError, LinClause, LinCnf};
use crate::gf2::{BitVec, LinEquation};
use crate::text::{tokens, Token};
use crate::ParseError;

/// Parses a form `i1+i2+...+ik` (strictly increasing, 1-based) or `0`.
pub fn parse_form(tok: &Token<'_>, nvars: usize) -> Result<BitVec, ParseError> {
    let text = tok.text;
    if text == "0" {
        return Ok(BitVec::zeros(nvars));
    }
    let mut form = BitVec::zeros(nvars);
    let mut prev = 0usize;
    let mut offset = 0usize;
    for part in text.split('+') {
        let col = tok.column + offset;
        offset += part.len() + 1;
        let v: usize = part.parse().map_err(|_| tok.error_at(col, format!("expected a variable index, found {part:?}")))?;
        if v == 0 {
            return Err(tok.error_at(col, "variable indices are 1-based"));
        }
        if v > nvars {
            return Err(tok.error_at(col, format!("variable {v} out of range 1..={nvars}")));
        }
        if v <= prev {
            return Err(tok.error_at(col, "variable indices must be strictly increasing"));
        }
        prev = v;
        form.set(v - 1, true);
    }
    Ok(form)
}

/// Parses a literal `<form>=<b>`.
pub fn parse_literal(tok: &Token<'_>, nvars: usize) -> Result<LinEquation, ParseError> {
    let Some(eq) = tok.text.find('=') else {
        return Err(tok.error("expected a literal of the form i1+...+ik=b"));
    };
    let lhs = Token { text: &tok.text[..eq], line: tok.line, column: tok.column };
    if lhs.text.is_empty() {
        return Err(tok.error("missing form before '='"));
    }
    let form = parse_form(&lhs, nvars)?;
    let rhs = match &tok.text[eq + 1..] {
        "0" => false,
        "1" => true,
        other => return Err(tok.error_at(tok.column + eq + 1, format!("right-hand side must be 0 or 1, found {other:?}"))),
    };
    Ok(LinEquation::new(form, rhs))
}

/// Parses the literal tokens of a clause (`F` alone is the empty clause).
pub fn parse_clause_tokens(toks: &[Token<'_>], nvars: usize) -> Result<LinClause, ParseError> {
    if toks.len() == 1 && toks[0].text == "F" {
        return Ok(LinClause::empty(nvars));
    }
    if toks.is_empty() {
        return Err(ParseError::new(0, 0, "empty clause must be written as F"));
    }
    let mut lits = Vec::with_capacity(toks.len());
    for t in toks {
        if t.text == "F" {
            return Err(t.error("F must be the only token of an empty clause"));
        }
        lits.push(parse_literal(t, nvars)?);
    }
    Ok(LinClause::new(nvars, lits))
}

pub fn write_clause(clause: &LinClause) -> String {
    clause.to_string()
}

pub fn parse_xlcnf(text: &str) -> Result<LinCnf, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut cnf: Option<LinCnf> = None;
    let mut comments = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        if raw == "c" || raw.starts_with("c ") {
            comments.push(raw.get(2..).unwrap_or("").to_owned());
            continue;
        }
        if raw.trim().is_empty() {
            continue;
        }
        let toks = tokens(raw, line);
        if toks[0].text == "p" {
            if header.is_some() {
                return Err(ParseError::new(line, 1, "duplicate header").into());
            }
            if toks.len() != 4 || toks[1].text != "xlcnf" {
                return Err(ParseError::new(line, 1, "expected header: p xlcnf <nvars> <nclauses>").into());
            }
            let nvars = toks[2].parse_usize()?;
            let nclauses = toks[3].parse_usize()?;
            header = Some((nvars, nclauses));
            cnf = Some(LinCnf::new(nvars));
            continue;
        }
        let (Some((nvars, nclauses)), Some(cnf)) = (header, cnf.as_mut()) else {
            return Err(ParseError::new(line, 1, "clause before header").into());
        };
        if cnf.len() == nclauses {
            return Err(ParseError::new(line, 1, format!("more than the declared {nclauses} clauses")).into());
        }
        let (lits, label) = match toks.iter().position(|t| t.text == "|") {
            Some(bar) => {
                let rest = &toks[bar + 1..];
                if rest.len() != 1 {
                    let col = rest.first().map_or(toks[bar].column, |t| t.column);
                    return Err(ParseError::new(line, col, "label must be a single token after '|'").into());
                }
                (&toks[..bar], Some(rest[0].text))
            }
            None => (&toks[..], None),
        };
        if lits.is_empty() {
            return Err(ParseError::new(line, 1, "empty clause must be written as F").into());
        }
        let clause = parse_clause_tokens(lits, nvars)?;
        cnf.push(clause, label);
    }
    let Some(mut cnf) = cnf else {
        return Err(ParseError::new(last_line.max(1), 1, "missing header p xlcnf <nvars> <nclauses>").into());
    };
    let (_, nclauses) = header.unwrap();
    if cnf.len() != nclauses {
        return Err(
            ParseError::new(last_line.max(1), 1, format!("header declares {nclauses} clauses, found {}", cnf.len())).into()
        );
    }
    cnf.comments = comments;
    Ok(cnf)
}

/// Canonical XLCNF text: comments, header, one clause per line.
pub fn write_xlcnf(cnf: &LinCnf) -> String {
    let mut out = String::new();
    for c in cnf.comments() {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(out, "p xlcnf {} {}", cnf.nvars(), cnf.len());
    for (i, clause) in cnf.clauses().iter().enumerate() {
        out.push_str(&clause.to_string());
        if let Some(label) = cnf.label(i) {
            let _ = write!(out, " | {label}");
        }
        out.push('\n');
    }
    out
}
