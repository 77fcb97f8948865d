use super::{BitVec, LinEquation, LinSystem};

/// Every consistent canonical system of a fixed rank, one per solution set.
///
/// Order: pivot sets in lexicographic order, then a binary counter over the
/// free entries (each row's bits right of its pivot outside other pivots) and
/// the right-hand sides.
pub struct CanonicalSystems {
    nvars: usize,
    rank: usize,
    pivots: Vec<usize>,
    /// (row, column) of every free entry for the current pivot set.
    slots: Vec<(usize, usize)>,
    counter: u128,
    limit: u128,
    done: bool,
}

impl CanonicalSystems {
    pub fn new(nvars: usize, rank: usize) -> Self {
        let mut it = CanonicalSystems {
            nvars,
            rank,
            pivots: (0..rank).collect(),
            slots: Vec::new(),
            counter: 0,
            limit: 0,
            done: rank > nvars,
        };
        if !it.done {
            it.load_slots();
        }
        it
    }

    fn load_slots(&mut self) {
        let mut is_pivot = vec![false; self.nvars];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        self.slots.clear();
        for (row, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.nvars {
                if !is_pivot[c] {
                    self.slots.push((row, c));
                }
            }
        }
        let bits = self.slots.len() + self.rank;
        assert!(bits < 128, "canonical system enumeration too wide");
        self.limit = 1u128 << bits;
        self.counter = 0;
    }

    fn advance_pivots(&mut self) -> bool {
        let r = self.rank;
        let n = self.nvars;
        let mut i = r;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - r + i {
                self.pivots[i] += 1;
                for j in i + 1..r {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn build(&self, code: u128) -> LinSystem {
        let mut rows: Vec<LinEquation> = self
            .pivots
            .iter()
            .enumerate()
            .map(|(i, &p)| LinEquation::new(BitVec::unit(self.nvars, p), code >> i & 1 == 1))
            .collect();
        for (k, &(row, col)) in self.slots.iter().enumerate() {
            if code >> (self.rank + k) & 1 == 1 {
                rows[row].form.set(col, true);
            }
        }
        LinSystem::new(self.nvars, rows)
    }
}

impl Iterator for CanonicalSystems {
    type Item = LinSystem;

    fn next(&mut self) -> Option<LinSystem> {
        if self.done {
            return None;
        }
        if self.counter >= self.limit {
            if self.rank == 0 || !self.advance_pivots() {
                self.done = true;
                return None;
            }
            self.load_slots();
        }
        let sys = self.build(self.counter);
        self.counter += 1;
        Some(sys)
    }
}

/// Number of consistent canonical systems of rank `rank` over `nvars`
/// variables: the Gaussian binomial times `2^rank`, as a float estimate.
pub fn canonical_system_count(nvars: usize, rank: usize) -> f64 {
    if rank > nvars {
        return 0.0;
    }
    let mut count = 2f64.powi(rank as i32);
    for i in 0..rank {
        count *= (2f64.powi((nvars - i) as i32) - 1.0) / (2f64.powi(i as i32 + 1) - 1.0);
    }
    count.round()
}

/// Every subspace of dimension at most `max_dim` of the span of `basis`,
/// returned as the distinct canonical systems they generate (consistent ones only).
pub fn implied_canonical_systems(nvars: usize, basis: &[LinEquation], max_dim: usize) -> Vec<LinSystem> {
    use std::collections::HashSet;
    let d = basis.len();
    assert!(d < 20, "span too large to enumerate subsystems");
    let span: Vec<LinEquation> = (1u32..1 << d)
        .map(|mask| {
            let mut acc = LinEquation::new(BitVec::zeros(nvars), false);
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.add(b);
                }
            }
            acc
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |sys: LinSystem, out: &mut Vec<LinSystem>| {
        if sys.is_consistent() && seen.insert(sys.key()) {
            out.push(sys.to_canonical());
        }
    };
    push(LinSystem::empty(nvars), &mut out);
    // Subspaces are generated by at most `max_dim` span elements.
    let mut stack: Vec<(usize, Vec<LinEquation>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() == max_dim {
            continue;
        }
        for i in start..span.len() {
            let mut next = chosen.clone();
            next.push(span[i].clone());
            let sys = LinSystem::new(nvars, next.clone());
            if sys.rank() == next.len() {
                push(sys, &mut out);
                stack.push((i + 1, next));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_gaussian_binomials() {
        for n in 0..=5 {
            for r in 0..=n {
                let all: Vec<_> = CanonicalSystems::new(n, r).collect();
                assert_eq!(all.len() as f64, canonical_system_count(n, r), "n={n} r={r}");
                let keys: HashSet<_> = all.iter().map(|s| s.key()).collect();
                assert_eq!(keys.len(), all.len());
                for s in &all {
                    assert!(s.is_consistent());
                    assert_eq!(s.rank(), r);
                    assert_eq!(s.canonical_rows(), s.equations());
                }
            }
        }
        assert_eq!(canonical_system_count(12, 1), 8190.0);
    }

    #[test]
    fn rank_zero_yields_only_the_empty_system() {
        let all: Vec<_> = CanonicalSystems::new(3, 0).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn implied_subsystems_of_rank_two() {
        let basis = vec![LinEquation::var(3, 0, true), LinEquation::var(3, 1, false)];
        let subs = implied_canonical_systems(3, &basis, 2);
        // empty + 3 one-dimensional + the whole span
        assert_eq!(subs.len(), 5);
    }
}
