//! Queue layouts of two-dimensional posets.
//!
//! A poset is laid out along one of its linear extensions and its cover
//! edges are split into queues, no two edges of a queue nesting. This crate
//! builds the recursive families `R_w` and `P_w`, measures rainbows and
//! optimal queue assignments for fixed orders, checks the forbidden
//! patterns that realizer orders of two-dimensional posets avoid, and
//! computes exact queue numbers by branch and bound or through a DIMACS
//! encoding handed to an external SAT solver.

pub mod constructions;
pub mod error;
pub mod io;
pub mod layout;
pub mod order;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use order::{ChainPartition, CoverGraph, Poset, RealizerPair};
