//! Workbench for Res(⊕), resolution over F2-linear equations.
//!
//! The crate generates the standard hard formula families, checks tree-like
//! proofs and space scripts, decides extensibility and winning strategies by
//! exhaustive canonical enumeration, plays Prover–Delayer games and computes
//! minimal linear splitting trees at small scale.

pub mod cli;
pub mod extend;
pub mod formula;
pub mod games;
pub mod gf2;
pub mod oracle;
pub mod proofcheck;
pub mod text;

pub use text::ParseError;
