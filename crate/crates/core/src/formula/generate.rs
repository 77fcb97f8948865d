use super::{BipartiteGraph, FormulaError, Graph, LinClause, LinCnf};

/// A formula family with its parameters.
#[derive(Clone, Debug)]
pub enum Family {
    Php { pigeons: usize, holes: usize },
    Fphp(BipartiteGraph),
    Ordering { n: usize },
    Dlo { n: usize },
    Gop(Graph),
}

pub fn generate(family: &Family) -> Result<LinCnf, FormulaError> {
    match family {
        Family::Php { pigeons, holes } => php(*pigeons, *holes),
        Family::Fphp(g) => fphp(g),
        Family::Ordering { n } => ordering(*n),
        Family::Dlo { n } => dlo(*n),
        Family::Gop(g) => gop(g),
    }
}

/// 0-based index of `p_ij` (pigeon `i`, hole `j`, both 0-based).
pub fn php_var(pigeon: usize, hole: usize, holes: usize) -> usize {
    pigeon * holes + hole
}

/// 0-based index of `x_ij` for `i != j` over `n` elements.
pub fn ordering_var(i: usize, j: usize, n: usize) -> usize {
    assert!(i != j && i < n && j < n);
    i * (n - 1) + if j < i { j } else { j - 1 }
}

/// Pigeonhole principle: labels `pigeon` and `hole`.
pub fn php(pigeons: usize, holes: usize) -> Result<LinCnf, FormulaError> {
    if holes < 1 || pigeons <= holes {
        return Err(FormulaError::InvalidParameter(format!(
            "php needs pigeons > holes >= 1, got pigeons={pigeons} holes={holes}"
        )));
    }
    let nvars = pigeons * holes;
    let mut cnf = LinCnf::new(nvars);
    cnf.add_comment(format!("php pigeons={pigeons} holes={holes}"));
    cnf.add_comment(format!("p(i,j) = variable (i-1)*{holes}+j"));
    for i in 0..pigeons {
        let lits: Vec<_> = (0..holes).map(|j| (php_var(i, j, holes), true)).collect();
        cnf.push(LinClause::from_vars(nvars, &lits), Some("pigeon"));
    }
    for i in 0..pigeons {
        for j in i + 1..pigeons {
            for k in 0..holes {
                let c = LinClause::from_vars(nvars, &[(php_var(i, k, holes), false), (php_var(j, k, holes), false)]);
                cnf.push(c, Some("hole"));
            }
        }
    }
    Ok(cnf)
}

/// Graph functional pigeonhole principle: one variable per edge (in sorted
/// edge order), labels `pigeon`, `hole` and `functional`.
pub fn fphp(g: &BipartiteGraph) -> Result<LinCnf, FormulaError> {
    if g.nleft == 0 || g.nright == 0 {
        return Err(FormulaError::InvalidParameter("fphp needs a nonempty bipartite graph".into()));
    }
    let nvars = g.edges.len();
    let var = |u: usize, v: usize| g.edges.binary_search(&(u, v)).ok();
    let mut cnf = LinCnf::new(nvars);
    cnf.add_comment(format!("fphp left={} right={} edges={}", g.nleft, g.nright, nvars));
    cnf.add_comment("p(u,v) = position of edge (u,v) in sorted edge order");
    for u in 0..g.nleft {
        let lits: Vec<_> = (0..g.nright).filter_map(|v| var(u, v)).map(|x| (x, true)).collect();
        cnf.push(LinClause::from_vars(nvars, &lits), Some("pigeon"));
    }
    for u in 0..g.nleft {
        for u2 in u + 1..g.nleft {
            for v in 0..g.nright {
                if let (Some(a), Some(b)) = (var(u, v), var(u2, v)) {
                    cnf.push(LinClause::from_vars(nvars, &[(a, false), (b, false)]), Some("hole"));
                }
            }
        }
    }
    for u in 0..g.nleft {
        for v in 0..g.nright {
            for v2 in v + 1..g.nright {
                if let (Some(a), Some(b)) = (var(u, v), var(u, v2)) {
                    cnf.push(LinClause::from_vars(nvars, &[(a, false), (b, false)]), Some("functional"));
                }
            }
        }
    }
    Ok(cnf)
}

/// Antisymmetry, totality and transitivity over `n` elements, labeled `label`.
fn push_linear_order(cnf: &mut LinCnf, n: usize, label: &str) {
    let nvars = cnf.nvars();
    let x = |i, j| ordering_var(i, j, n);
    for i in 0..n {
        for j in i + 1..n {
            cnf.push(LinClause::from_vars(nvars, &[(x(i, j), false), (x(j, i), false)]), Some(label));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            cnf.push(LinClause::from_vars(nvars, &[(x(i, j), true), (x(j, i), true)]), Some(label));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    let c = LinClause::from_vars(nvars, &[(x(i, j), false), (x(j, k), false), (x(i, k), true)]);
                    cnf.push(c, Some(label));
                }
            }
        }
    }
}

/// Ordering principle: labels `order` and `nonmin`.
pub fn ordering(n: usize) -> Result<LinCnf, FormulaError> {
    if n < 2 {
        return Err(FormulaError::InvalidParameter(format!("ordering needs n >= 2, got {n}")));
    }
    let nvars = n * (n - 1);
    let mut cnf = LinCnf::new(nvars);
    cnf.add_comment(format!("ordering n={n}"));
    cnf.add_comment(format!("x(i,j) = variable (i-1)*{}+j', j' = j-1 if j > i else j", n - 1));
    push_linear_order(&mut cnf, n, "order");
    for i in 0..n {
        let lits: Vec<_> = (0..n).filter(|&j| j != i).map(|j| (ordering_var(j, i, n), true)).collect();
        cnf.push(LinClause::from_vars(nvars, &lits), Some("nonmin"));
    }
    Ok(cnf)
}

/// Graph ordering principle: labels `order` and `nonmin`; every vertex needs a neighbor.
pub fn gop(g: &Graph) -> Result<LinCnf, FormulaError> {
    let n = g.nverts;
    if n < 2 {
        return Err(FormulaError::InvalidParameter(format!("gop needs at least 2 vertices, got {n}")));
    }
    let neighbors: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u)).collect();
    if let Some(u) = neighbors.iter().position(Vec::is_empty) {
        return Err(FormulaError::InvalidParameter(format!("gop: vertex {} is isolated", u + 1)));
    }
    let nvars = n * (n - 1);
    let mut cnf = LinCnf::new(nvars);
    cnf.add_comment(format!("gop vertices={n} edges={}", g.edges.len()));
    cnf.add_comment(format!("x(u,v) = variable (u-1)*{}+v', v' = v-1 if v > u else v", n - 1));
    push_linear_order(&mut cnf, n, "order");
    for (u, nb) in neighbors.iter().enumerate() {
        let lits: Vec<_> = nb.iter().map(|&v| (ordering_var(v, u, n), true)).collect();
        cnf.push(LinClause::from_vars(nvars, &lits), Some("nonmin"));
    }
    Ok(cnf)
}

/// Index of the witness variable `z_ikj` among the `n(n-1)(n-2)` witnesses.
fn witness_index(i: usize, k: usize, j: usize, n: usize) -> usize {
    let k2 = if k < i { k } else { k - 1 };
    let lo = i.min(k);
    let hi = i.max(k);
    let j2 = j - (j > lo) as usize - (j > hi) as usize;
    (i * (n - 1) + k2) * (n - 2) + j2
}

/// Dense linear ordering principle: labels `worder` and `density`.
///
/// Variables: the `n(n-1)` order variables of [`ordering`], then `z_ikj`
/// (witness `k` between `i` and `j`) for distinct triples in lexicographic
/// `(i, k, j)` order.
pub fn dlo(n: usize) -> Result<LinCnf, FormulaError> {
    if n < 3 {
        return Err(FormulaError::InvalidParameter(format!("dlo needs n >= 3, got {n}")));
    }
    let nx = n * (n - 1);
    let nvars = nx + n * (n - 1) * (n - 2);
    let x = |i, j| ordering_var(i, j, n);
    let z = |i, k, j| nx + witness_index(i, k, j, n);
    let mut cnf = LinCnf::new(nvars);
    cnf.add_comment(format!("dlo n={n}"));
    cnf.add_comment(format!("x(i,j) as in ordering; z(i,k,j) = {nx} + 1 + rank of (i,k,j) among distinct triples"));
    push_linear_order(&mut cnf, n, "worder");
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                if i != k && k != j && i != j {
                    cnf.push(LinClause::from_vars(nvars, &[(z(i, k, j), false), (x(i, k), true)]), Some("worder"));
                    cnf.push(LinClause::from_vars(nvars, &[(z(i, k, j), false), (x(k, j), true)]), Some("worder"));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut lits = vec![(x(i, j), false)];
                lits.extend((0..n).filter(|&k| k != i && k != j).map(|k| (z(i, k, j), true)));
                cnf.push(LinClause::from_vars(nvars, &lits), Some("density"));
            }
        }
    }
    Ok(cnf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn php_3_2_shape() {
        let cnf = php(3, 2).unwrap();
        assert_eq!(cnf.nvars(), 6);
        assert_eq!(cnf.len(), 9);
        assert_eq!(cnf.indices_with_label("pigeon").len(), 3);
        assert_eq!(cnf.indices_with_label("hole").len(), 6);
        assert_eq!(cnf.r(), 2);
    }

    #[test]
    fn ordering_3_shape() {
        let cnf = ordering(3).unwrap();
        assert_eq!(cnf.nvars(), 6);
        assert_eq!(cnf.len(), 15);
        assert_eq!(cnf.indices_with_label("order").len(), 12);
        assert_eq!(cnf.indices_with_label("nonmin").len(), 3);
    }

    #[test]
    fn dlo_4_shape() {
        let cnf = dlo(4).unwrap();
        assert_eq!(cnf.nvars(), 36);
        // 6 antisymmetry + 6 totality + 24 transitivity + 48 semantics
        assert_eq!(cnf.indices_with_label("worder").len(), 84);
        assert_eq!(cnf.indices_with_label("density").len(), 12);
        assert_eq!(cnf.r(), 3);
    }

    #[test]
    fn variable_maps_are_bijective() {
        for n in 3..7 {
            let xs: HashSet<_> =
                (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| ordering_var(i, j, n))).collect();
            assert_eq!(xs.len(), n * (n - 1));
            assert!(xs.iter().all(|&v| v < n * (n - 1)));
            let mut zs = HashSet::new();
            for i in 0..n {
                for k in 0..n {
                    for j in 0..n {
                        if i != k && k != j && i != j {
                            assert!(zs.insert(witness_index(i, k, j, n)));
                        }
                    }
                }
            }
            assert_eq!(zs.len(), n * (n - 1) * (n - 2));
            assert!(zs.iter().all(|&v| v < n * (n - 1) * (n - 2)));
        }
    }

    #[test]
    fn parameter_violations_are_reported() {
        assert!(php(2, 2).is_err());
        assert!(php(1, 0).is_err());
        assert!(ordering(1).is_err());
        assert!(dlo(2).is_err());
        assert!(gop(&Graph::new(3, [(0, 1)])).is_err());
    }

    #[test]
    fn gop_on_complete_graph_matches_ordering() {
        let a = gop(&Graph::complete(4)).unwrap();
        let b = ordering(4).unwrap();
        assert_eq!(a.clauses(), b.clauses());
    }

    #[test]
    fn fphp_complete_has_functionality_axioms() {
        let cnf = fphp(&BipartiteGraph::complete(3, 2)).unwrap();
        assert_eq!(cnf.nvars(), 6);
        assert_eq!(cnf.indices_with_label("pigeon").len(), 3);
        assert_eq!(cnf.indices_with_label("hole").len(), 6);
        assert_eq!(cnf.indices_with_label("functional").len(), 3);
    }
}
