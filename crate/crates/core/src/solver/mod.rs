//! Exact queue numbers.
//!
//! [`exact_qn_bnb`] searches linear extensions depth first with rainbow
//! pruning; [`brute_force_qn`] enumerates every extension of a small poset
//! and serves as its oracle. For larger posets [`encode_cnf`] writes the
//! question "is there a layout with at most `k` queues" as DIMACS for an
//! external SAT solver, and [`decode_model`] turns a model back into a
//! validated layout.

mod bnb;
mod cnf;
pub mod dpll;

pub use bnb::{
    brute_force_qn, count_linear_extensions, exact_qn_bnb, exact_qn_realizers, BnbOptions,
    BRUTE_FORCE_MAX,
};
pub use cnf::{
    decode_model, encode_cnf, parse_dimacs, poset_digest, ClauseCounts, CnfInstance, Decoded, Model,
};

use std::time::Duration;

use crate::layout::QueueAssignment;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub qn: usize,
    /// Witness linear extension (element indices).
    pub order: Vec<usize>,
    pub assignment: QueueAssignment,
    /// False only for incumbents returned with a node-limit error.
    pub optimal: bool,
    pub stats: SolveStats,
}
