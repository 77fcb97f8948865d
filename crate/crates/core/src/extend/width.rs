//! Width-bounded derivability, computed on falsifier subspaces.
//!
//! A clause of width at most `k` is identified with the canonical form of its
//! negation, a consistent system of rank at most `k`. Semantic weakening makes
//! the derivable set closed under strengthening that system, so the closure
//! is computed over the finite universe of such systems with two rules:
//!
//! * `rank(R) < k`: if `R ∧ f=0` and `R ∧ f=1` are derivable, so is `R`;
//! * `rank(R) = k`: if `P ∧ f=1` and `Q ∧ f=0` are derivable for two distinct
//!   hyperplanes `P`, `Q` of `R`, so is `R` (resolve `A ∨ f=0` with `B ∨ f=1`
//!   where `¬A`, `¬B` span `P`, `Q` and share a basis of `P ∩ Q`).
//!
//! Systems whose strengthening is inconsistent stand for valid clauses and
//! count as derivable inside the rules.

use std::collections::HashMap;

use super::ExtendError;
use crate::formula::{LinClause, LinCnf};
use crate::gf2::{BitVec, LinEquation, LinSystem};

/// Hard ceilings of the packed representation.
const MAX_VARS: usize = 14;
const MAX_RANK: usize = 7;

#[derive(Clone, Debug)]
pub struct WidthLimits {
    pub max_vars: usize,
    pub max_k: usize,
}

impl Default for WidthLimits {
    fn default() -> Self {
        WidthLimits { max_vars: 6, max_k: 3 }
    }
}

/// An affine subspace in reduced echelon form over augmented vectors: bits
/// `0..n` hold the form, bit `n` the right-hand side; each row's pivot is its
/// lowest set bit and is cleared in every other row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Sub {
    rows: [u16; MAX_RANK + 1],
    rank: u8,
}

impl Sub {
    const EMPTY: Sub = Sub { rows: [0; MAX_RANK + 1], rank: 0 };

    fn rows(&self) -> &[u16] {
        &self.rows[..self.rank as usize]
    }

    fn key(&self) -> u128 {
        self.rows().iter().enumerate().fold(0u128, |acc, (i, &r)| acc | (r as u128) << (16 * i))
    }

    fn reduce(&self, mut v: u16) -> u16 {
        for &r in self.rows() {
            if v & (r & r.wrapping_neg()) != 0 {
                v ^= r;
            }
        }
        v
    }

    fn contains(&self, v: u16) -> bool {
        self.reduce(v) == 0
    }

    /// Span with `v`, or `None` if `v` is already in the span.
    fn insert(&self, v: u16) -> Option<Sub> {
        let v = self.reduce(v);
        if v == 0 {
            return None;
        }
        let pivot = v & v.wrapping_neg();
        let mut out = *self;
        for r in out.rows[..out.rank as usize].iter_mut() {
            if *r & pivot != 0 {
                *r ^= v;
            }
        }
        let at = out.rows().iter().position(|&r| (r & r.wrapping_neg()) > pivot).unwrap_or(out.rank as usize);
        out.rows.copy_within(at..out.rank as usize, at + 1);
        out.rows[at] = v;
        out.rank += 1;
        Some(out)
    }

    fn is_consistent(&self, n: usize) -> bool {
        !self.rows().contains(&(1u16 << n))
    }

    fn from_rows(rows: impl IntoIterator<Item = u16>) -> Sub {
        rows.into_iter().fold(Sub::EMPTY, |s, v| s.insert(v).unwrap_or(s))
    }

    /// All hyperplanes (kernels of nonzero functionals on the row basis).
    fn hyperplanes(&self) -> Vec<Sub> {
        let b = self.rows();
        let k = b.len();
        (1u32..1 << k)
            .map(|lambda| {
                let j = lambda.trailing_zeros() as usize;
                Sub::from_rows((0..k).filter(|&i| i != j).map(|i| if lambda >> i & 1 == 1 { b[i] ^ b[j] } else { b[i] }))
            })
            .collect()
    }

    pub(crate) fn to_system(self, n: usize) -> LinSystem {
        LinSystem::new(n, self.rows().iter().map(|&r| unpack(r, n)).collect()).to_canonical()
    }
}

fn pack(eq: &LinEquation, n: usize) -> u16 {
    eq.form.ones().fold((eq.rhs as u16) << n, |acc, i| acc | 1 << i)
}

fn unpack(v: u16, n: usize) -> LinEquation {
    LinEquation::new(BitVec::from_indices(n, (0..n).filter(|&i| v >> i & 1 == 1)), v >> n & 1 == 1)
}

/// Derivable clauses of width at most `k`, as falsifier systems.
#[derive(Clone, Debug)]
pub struct WidthClosure {
    pub k: usize,
    pub nvars: usize,
    pub refuted: bool,
    universe: Vec<Sub>,
    derived: Vec<bool>,
}

impl WidthClosure {
    /// Canonical negation systems of the derivable clauses.
    pub fn derived_systems(&self) -> Vec<LinSystem> {
        self.select(true)
    }

    /// Consistent systems of rank at most `k` that falsify no derivable clause.
    pub fn underived_systems(&self) -> Vec<LinSystem> {
        self.select(false)
    }

    /// The derivable clauses, one canonical clause per falsifier subspace.
    pub fn clauses(&self) -> Vec<LinClause> {
        self.derived_systems().iter().map(LinClause::negation_of).collect()
    }

    pub fn len(&self) -> usize {
        self.derived.iter().filter(|&&d| d).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn select(&self, want: bool) -> Vec<LinSystem> {
        self.universe.iter().zip(&self.derived).filter(|(_, &d)| d == want).map(|(s, _)| s.to_system(self.nvars)).collect()
    }
}

fn check_limits(cnf: &LinCnf, k: usize, limits: &WidthLimits) -> Result<(), ExtendError> {
    let n = cnf.nvars();
    if n > limits.max_vars.min(MAX_VARS) {
        return Err(ExtendError::Limit(format!(
            "width saturation supports at most {} variables, formula has {n}",
            limits.max_vars.min(MAX_VARS)
        )));
    }
    if k > limits.max_k.min(MAX_RANK) {
        return Err(ExtendError::Limit(format!("width saturation supports k <= {}, got {k}", limits.max_k.min(MAX_RANK))));
    }
    Ok(())
}

pub fn width_closure(cnf: &LinCnf, k: usize, limits: &WidthLimits) -> Result<WidthClosure, ExtendError> {
    check_limits(cnf, k, limits)?;
    let n = cnf.nvars();
    let vectors = 1u16..(1u32 << (n + 1)) as u16;

    let mut universe = vec![Sub::EMPTY];
    let mut index: HashMap<u128, usize> = HashMap::from([(0, 0)]);
    let mut frontier = 0;
    for _ in 0..k {
        let end = universe.len();
        for i in frontier..end {
            let s = universe[i];
            for v in vectors.clone() {
                if let Some(t) = s.insert(v).filter(|t| t.is_consistent(n)) {
                    index.entry(t.key()).or_insert_with(|| {
                        universe.push(t);
                        universe.len() - 1
                    });
                }
            }
        }
        frontier = end;
    }

    let mut derived = vec![false; universe.len()];
    let mark = |start: usize, derived: &mut Vec<bool>| {
        if derived[start] {
            return;
        }
        derived[start] = true;
        let mut work = vec![start];
        while let Some(i) = work.pop() {
            let s = universe[i];
            if s.rank as usize == k {
                continue;
            }
            for v in vectors.clone() {
                if let Some(t) = s.insert(v).filter(|t| t.is_consistent(n)) {
                    let j = index[&t.key()];
                    if !derived[j] {
                        derived[j] = true;
                        work.push(j);
                    }
                }
            }
        }
    };

    for c in cnf.clauses() {
        if c.width() > k {
            continue;
        }
        let s = Sub::from_rows(c.literals().iter().map(|l| pack(&l.flipped(), n)));
        if s.is_consistent(n) {
            mark(index[&s.key()], &mut derived);
        }
    }

    let hyperplanes: Vec<Vec<Sub>> =
        universe.iter().map(|s| if k > 0 && s.rank as usize == k { s.hyperplanes() } else { Vec::new() }).collect();
    let rhs = 1u16 << n;
    loop {
        let mut changed = false;
        for i in 0..universe.len() {
            if derived[i] {
                continue;
            }
            let holds = |t: Option<Sub>, base: &Sub, derived: &[bool]| -> bool {
                let t = t.unwrap_or(*base);
                !t.is_consistent(n) || index.get(&t.key()).is_some_and(|&j| derived[j])
            };
            let r = universe[i];
            let ok = if (r.rank as usize) < k {
                (1..rhs).any(|h| {
                    !r.contains(h)
                        && !r.contains(h | rhs)
                        && holds(r.insert(h), &r, &derived)
                        && holds(r.insert(h | rhs), &r, &derived)
                })
            } else {
                let hs = &hyperplanes[i];
                (1..rhs).any(|h| {
                    let ones: Vec<bool> = hs.iter().map(|p| holds(p.insert(h | rhs), p, &derived)).collect();
                    let zeros: Vec<bool> = hs.iter().map(|p| holds(p.insert(h), p, &derived)).collect();
                    (0..hs.len()).any(|a| ones[a] && (0..hs.len()).any(|b| b != a && zeros[b]))
                })
            };
            if ok {
                mark(i, &mut derived);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(WidthClosure { k, nvars: n, refuted: derived[0], universe, derived })
}

/// Least `k <= kmax` with a width-`k` refutation, or `None` for "greater than `kmax`".
pub fn exact_width(cnf: &LinCnf, kmax: usize, limits: &WidthLimits) -> Result<Option<usize>, ExtendError> {
    check_limits(cnf, kmax, limits)?;
    for k in 0..=kmax {
        if width_closure(cnf, k, limits)?.refuted {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
