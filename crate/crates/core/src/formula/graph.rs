use std::fmt::Write as _;

use crate::text::{content_lines, tokens};
use crate::ParseError;

/// Simple undirected graph on vertices `0..nverts`; edges stored as sorted `(u, v)`, `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub nverts: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(nverts: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph { nverts, edges }
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == u {
                    Some(b)
                } else if b == u {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Bipartite graph with left part `0..nleft` (pigeons) and right part `0..nright` (holes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub nleft: usize,
    pub nright: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(nleft: usize, nright: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        BipartiteGraph { nleft, nright, edges }
    }

    pub fn complete(nleft: usize, nright: usize) -> Self {
        BipartiteGraph::new(nleft, nright, (0..nleft).flat_map(|u| (0..nright).map(move |v| (u, v))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphInput {
    Plain(Graph),
    Bipartite(BipartiteGraph),
}

/// Parses `p graph <nverts> <nedges>` or `p bigraph <nleft> <nright> <nedges>`
/// followed by 1-based `u v` edge lines.
pub fn parse_graph(text: &str) -> Result<GraphInput, ParseError> {
    let mut lines = content_lines(text);
    let Some((hline, htext)) = lines.next() else {
        return Err(ParseError::new(1, 1, "missing graph header"));
    };
    let h = tokens(htext, hline);
    let (bipartite, sizes, nedges) = match (h.first().map(|t| t.text), h.get(1).map(|t| t.text), h.len()) {
        (Some("p"), Some("graph"), 4) => (false, vec![h[2].parse_usize()?], h[3].parse_usize()?),
        (Some("p"), Some("bigraph"), 5) => (true, vec![h[2].parse_usize()?, h[3].parse_usize()?], h[4].parse_usize()?),
        _ => return Err(ParseError::new(hline, 1, "expected p graph <nverts> <nedges> or p bigraph <nleft> <nright> <nedges>")),
    };
    let mut edges = Vec::with_capacity(nedges);
    let mut last = hline;
    for (line, body) in lines {
        last = line;
        let t = tokens(body, line);
        if t[0].text == "p" {
            return Err(ParseError::new(line, 1, "duplicate header"));
        }
        if t.len() != 2 {
            return Err(ParseError::new(line, 1, "expected an edge line: u v"));
        }
        if edges.len() == nedges {
            return Err(ParseError::new(line, 1, format!("more than the declared {nedges} edges")));
        }
        let (u, v) = if bipartite {
            (t[0].parse_index(sizes[0], "left vertex")?, t[1].parse_index(sizes[1], "right vertex")?)
        } else {
            let u = t[0].parse_index(sizes[0], "vertex")?;
            let v = t[1].parse_index(sizes[0], "vertex")?;
            if u == v {
                return Err(t[1].error("self-loops are not allowed"));
            }
            (u, v)
        };
        edges.push((u, v));
    }
    if edges.len() != nedges {
        return Err(ParseError::new(last, 1, format!("header declares {nedges} edges, found {}", edges.len())));
    }
    Ok(if bipartite {
        GraphInput::Bipartite(BipartiteGraph::new(sizes[0], sizes[1], edges))
    } else {
        GraphInput::Plain(Graph::new(sizes[0], edges))
    })
}

pub fn write_graph(g: &GraphInput) -> String {
    let mut out = String::new();
    match g {
        GraphInput::Plain(g) => {
            let _ = writeln!(out, "p graph {} {}", g.nverts, g.edges.len());
            for (u, v) in &g.edges {
                let _ = writeln!(out, "{} {}", u + 1, v + 1);
            }
        }
        GraphInput::Bipartite(g) => {
            let _ = writeln!(out, "p bigraph {} {} {}", g.nleft, g.nright, g.edges.len());
            for (u, v) in &g.edges {
                let _ = writeln!(out, "{} {}", u + 1, v + 1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_kinds() {
        let g = parse_graph("c triangle\np graph 3 3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g, GraphInput::Plain(Graph::complete(3)));
        assert_eq!(write_graph(&g), "p graph 3 3\n1 2\n1 3\n2 3\n");
        let b = parse_graph("p bigraph 2 1 2\n1 1\n2 1\n").unwrap();
        assert_eq!(b, GraphInput::Bipartite(BipartiteGraph::complete(2, 1)));
    }

    #[test]
    fn rejects_bad_vertices() {
        let e = parse_graph("p graph 2 1\n1 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_graph("p graph 2 1\n1 1\n").is_err());
        assert!(parse_graph("p graph 2 2\n1 2\n").is_err());
    }
}
