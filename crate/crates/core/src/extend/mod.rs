//! Extensibility, width closure and winning strategies.
//!
//! A system Φ has an F-proper solution when some solution of Φ satisfies every
//! clause indexed by F. A formula is `m`-extensible with respect to F when each
//! consistent system of rank below `m` with an F-proper solution has one that
//! also satisfies any chosen clause outside F.

use thiserror::Error;

mod extensibility;
mod search;
mod strategy;
mod width;

pub use extensibility::{check_extensibility, Counterexample, ExtendOptions, ExtendVerdict};
pub use search::{has_f_proper_solution, ProperSearch, DEFAULT_NODE_BUDGET};
pub use strategy::{
    build_canonical_strategy, check_winning_strategy, parse_xws, write_xws, StrategyFamily, StrategyVerdict, Violation,
};
pub use width::{exact_width, width_closure, WidthClosure, WidthLimits};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("budget exceeded: more than {budget} {what}")]
    BudgetExceeded { what: &'static str, budget: u64 },
    #[error("{0}")]
    Limit(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
