use rayon::prelude::*;

use super::{ExtendError, ProperSearch};
use crate::formula::LinCnf;
use crate::gf2::{canonical_system_count, CanonicalSystems, LinSystem};

#[derive(Clone, Debug)]
pub struct ExtendOptions {
    /// Maximum number of canonical systems to enumerate.
    pub max_systems: u64,
    /// Node budget of each F-proper search.
    pub node_budget: u64,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions { max_systems: 20_000_000, node_budget: super::DEFAULT_NODE_BUDGET }
    }
}

/// A system with an F-proper solution none of which satisfies `clause`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub system: LinSystem,
    pub clause: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub systems_checked: u64,
}

const CHUNK: usize = 512;

/// Decides whether `cnf` is `m`-extensible with respect to the clauses `f`:
/// every consistent canonical system of rank below `m` that has an F-proper
/// solution has one satisfying each clause outside `f`.
///
/// Systems are checked in canonical enumeration order; the reported
/// counterexample is the first one in that order for any number of threads.
pub fn check_extensibility(cnf: &LinCnf, f: &[usize], m: usize, opts: &ExtendOptions) -> Result<ExtendVerdict, ExtendError> {
    if m == 0 {
        return Err(ExtendError::InvalidArgument("m must be at least 1".into()));
    }
    let n = cnf.nvars();
    let total: f64 = (0..m.min(n + 1)).map(|r| canonical_system_count(n, r)).sum();
    if total > opts.max_systems as f64 {
        return Err(ExtendError::BudgetExceeded { what: "canonical systems", budget: opts.max_systems });
    }
    let search = ProperSearch::new(cnf, f).with_budget(opts.node_budget);
    let mut in_f = vec![false; cnf.len()];
    for &i in f {
        in_f[i] = true;
    }
    let others: Vec<usize> = (0..cnf.len()).filter(|&i| !in_f[i] && !cnf.clause(i).is_tautological()).collect();

    let mut checked = 0u64;
    for rank in 0..m.min(n + 1) {
        let mut systems = CanonicalSystems::new(n, rank);
        loop {
            let chunk: Vec<LinSystem> = systems.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let results: Vec<Result<Option<usize>, ExtendError>> =
                chunk.par_iter().map(|s| check_system(&search, cnf, &others, s)).collect();
            for (sys, r) in chunk.into_iter().zip(results) {
                checked += 1;
                if let Some(clause) = r? {
                    return Ok(ExtendVerdict {
                        holds: false,
                        counterexample: Some(Counterexample { system: sys, clause }),
                        systems_checked: checked,
                    });
                }
            }
        }
    }
    Ok(ExtendVerdict { holds: true, counterexample: None, systems_checked: checked })
}

/// First clause of `others` that no F-proper solution of `sys` satisfies.
fn check_system(search: &ProperSearch, cnf: &LinCnf, others: &[usize], sys: &LinSystem) -> Result<Option<usize>, ExtendError> {
    let Some(first) = search.find(sys, None)? else {
        return Ok(None);
    };
    let mut witnesses = vec![first];
    for &i in others {
        let c = cnf.clause(i);
        if witnesses.iter().any(|w| c.evaluate(w)) {
            continue;
        }
        match search.find(sys, Some(c))? {
            Some(w) => witnesses.push(w),
            None => return Ok(Some(i)),
        }
    }
    Ok(None)
}
