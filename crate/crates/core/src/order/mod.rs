//! Poset algebra: construction from realizers or relation lists, covers,
//! duals, width and chain partitions, linear extensions, isomorphism.

mod chains;
mod iso;
mod poset;

pub use chains::{min_chain_partition, width, ChainPartition};
pub use iso::{isomorphic, IsoOptions};
pub use poset::{CoverGraph, Poset, RealizerPair};
