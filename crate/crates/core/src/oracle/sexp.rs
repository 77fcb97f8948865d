use super::SplitTree;
use crate::formula::parse_form;
use crate::text::Token;
use crate::ParseError;

/// `(leaf <clause>)` or `(node <form> <t0> <t1>)`, clauses 1-based.
pub fn write_split_tree(tree: &SplitTree) -> String {
    let mut out = String::new();
    write_into(tree, &mut out);
    out
}

fn write_into(tree: &SplitTree, out: &mut String) {
    match tree {
        SplitTree::Leaf(i) => out.push_str(&format!("(leaf {})", i + 1)),
        SplitTree::Node { form, zero, one } => {
            out.push_str(&format!("(node {form} "));
            write_into(zero, out);
            out.push(' ');
            write_into(one, out);
            out.push(')');
        }
    }
}

fn lex(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let mut start: Option<usize> = None;
        let bytes = line.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            let delim = b == b'(' || b == b')' || b.is_ascii_whitespace();
            if delim {
                if let Some(s) = start.take() {
                    out.push(Token { text: &line[s..i], line: li + 1, column: s + 1 });
                }
                if b != b' ' && b != b'\t' && b != b'\r' {
                    out.push(Token { text: &line[i..i + 1], line: li + 1, column: i + 1 });
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push(Token { text: &line[s..], line: li + 1, column: s + 1 });
        }
    }
    out
}

pub fn parse_split_tree(text: &str, nvars: usize, nclauses: usize) -> Result<SplitTree, ParseError> {
    let toks = lex(text);
    let mut pos = 0;
    let tree = parse_at(&toks, &mut pos, nvars, nclauses, text)?;
    if let Some(t) = toks.get(pos) {
        return Err(t.error("trailing input after tree"));
    }
    Ok(tree)
}

fn end_error(text: &str) -> ParseError {
    let line = text.lines().count().max(1);
    ParseError::new(line, 1, "unexpected end of tree")
}

fn expect<'a>(toks: &'a [Token<'a>], pos: &mut usize, what: &str, text: &str) -> Result<&'a Token<'a>, ParseError> {
    let t = toks.get(*pos).ok_or_else(|| end_error(text))?;
    if t.text != what {
        return Err(t.error(format!("expected {what:?}, found {:?}", t.text)));
    }
    *pos += 1;
    Ok(t)
}

fn parse_at(toks: &[Token<'_>], pos: &mut usize, nvars: usize, nclauses: usize, text: &str) -> Result<SplitTree, ParseError> {
    expect(toks, pos, "(", text)?;
    let head = toks.get(*pos).ok_or_else(|| end_error(text))?;
    *pos += 1;
    let tree = match head.text {
        "leaf" => {
            let t = toks.get(*pos).ok_or_else(|| end_error(text))?;
            *pos += 1;
            SplitTree::Leaf(t.parse_index(nclauses, "clause")?)
        }
        "node" => {
            let t = toks.get(*pos).ok_or_else(|| end_error(text))?;
            *pos += 1;
            let form = parse_form(t, nvars)?;
            let zero = parse_at(toks, pos, nvars, nclauses, text)?;
            let one = parse_at(toks, pos, nvars, nclauses, text)?;
            SplitTree::Node { form, zero: Box::new(zero), one: Box::new(one) }
        }
        other => return Err(head.error(format!("expected leaf or node, found {other:?}"))),
    };
    expect(toks, pos, ")", text)?;
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVec;

    #[test]
    fn round_trip() {
        let t = SplitTree::Node {
            form: BitVec::from_indices(3, [0, 2]),
            zero: Box::new(SplitTree::Leaf(0)),
            one: Box::new(SplitTree::Node {
                form: BitVec::unit(3, 1),
                zero: Box::new(SplitTree::Leaf(1)),
                one: Box::new(SplitTree::Leaf(2)),
            }),
        };
        let text = write_split_tree(&t);
        assert_eq!(text, "(node 1+3 (leaf 1) (node 2 (leaf 2) (leaf 3)))");
        assert_eq!(parse_split_tree(&text, 3, 3).unwrap(), t);
        assert_eq!(parse_split_tree("(node 1+3\n  (leaf 1)\n  (node 2 (leaf 2) (leaf 3)))\n", 3, 3).unwrap(), t);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_split_tree("(node 1 (leaf 1) (leaf 9))", 2, 2).unwrap_err();
        assert_eq!((e.line, e.column), (1, 24));
        let e = parse_split_tree("(node 1 (leaf 1)", 2, 2).unwrap_err();
        assert!(e.message.contains("end"));
        let e = parse_split_tree("(leaf 1) x", 2, 2).unwrap_err();
        assert_eq!(e.column, 10);
    }
}
