//! Exact linear algebra over F2 on bit-packed coefficient vectors.
//!
//! [`LinSystem`] keeps the reduced row-echelon form of its augmented matrix,
//! which is the canonical representative of the solution set used for
//! memo keys and deduplication throughout the crate. [`Echelon`] is the
//! mutable, undoable variant used inside backtracking searches.

mod bitvec;
mod echelon;
mod enumerate;
mod system;

pub use bitvec::{BitVec, Ones};
pub use echelon::{Echelon, Push};
pub use enumerate::{canonical_system_count, implied_canonical_systems, CanonicalSystems};
pub use system::{LinEquation, LinSystem, Solutions, DEFAULT_ENUM_LIMIT};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("inconsistent system")]
    Inconsistent,
    #[error("enumeration too large: {free} free variables exceed the limit of {limit}")]
    EnumerationTooLarge { free: usize, limit: usize },
}

/// Canonical form of `sys`; the returned system's equations are its RREF rows.
pub fn rref(sys: &LinSystem) -> LinSystem {
    sys.to_canonical()
}

pub fn implies_equation(sys: &LinSystem, eq: &LinEquation) -> bool {
    sys.implies(eq)
}

pub fn solve(sys: &LinSystem) -> Result<Vec<bool>, Gf2Error> {
    sys.solve()
}

pub fn enumerate_solutions(sys: &LinSystem, cap: usize) -> Result<Solutions<'_>, Gf2Error> {
    sys.enumerate_solutions(cap)
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn system(max_vars: usize, max_eqs: usize) -> impl Strategy<Value = LinSystem> {
        (1..=max_vars).prop_flat_map(move |n| system_over(n, max_eqs))
    }

    fn system_over(n: usize, max_eqs: usize) -> impl Strategy<Value = LinSystem> {
        prop::collection::vec((prop::collection::vec(any::<bool>(), n), any::<bool>()), 0..=max_eqs).prop_map(move |rows| {
            LinSystem::new(n, rows.into_iter().map(|(bits, rhs)| LinEquation::new(BitVec::from_bools(&bits), rhs)).collect())
        })
    }

    /// Every assignment over `n` variables, as a brute-force reference.
    fn cube(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0u32..1 << n).map(move |c| (0..n).map(|i| c >> (n - 1 - i) & 1 == 1).collect())
    }

    fn solution_set(sys: &LinSystem) -> Vec<Vec<bool>> {
        cube(sys.nvars()).filter(|a| sys.holds(a)).collect()
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(s in system(12, 10)) {
            let once = rref(&s);
            let twice = rref(&once);
            prop_assert_eq!(once.equations(), twice.equations());
        }

        #[test]
        fn rref_preserves_solutions(s in system(12, 10)) {
            let mut a = solution_set(&s);
            let mut b: Vec<_> = rref(&s).enumerate_solutions(usize::MAX).unwrap().collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn implication_matches_brute_force(
            s in system(12, 8),
            bits in prop::collection::vec(any::<bool>(), 12),
            rhs in any::<bool>(),
        ) {
            let n = s.nvars();
            let e = LinEquation::new(BitVec::from_bools(&bits[..n]), rhs);
            let brute = solution_set(&s).iter().all(|a| e.holds(a));
            prop_assert_eq!(implies_equation(&s, &e), brute);
        }

        #[test]
        fn equal_solution_sets_share_canonical_form(
            (a, b) in (1usize..=4).prop_flat_map(|n| (system_over(n, 5), system_over(n, 5)))
        ) {
            if solution_set(&a) == solution_set(&b) {
                prop_assert_eq!(a.canonical_rows(), b.canonical_rows());
            } else {
                prop_assert_ne!(a.canonical_rows(), b.canonical_rows());
            }
        }
    }
}
