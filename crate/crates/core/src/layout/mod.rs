//! Fixed-order analysis of a poset's cover graph.
//!
//! A [`Layout`] pins the vertex order to a linear extension. Two cover edges
//! nest when one strictly contains the other (`u < a < b < v`); shared
//! endpoints never nest.

mod patterns;
mod rainbow;
mod report;

pub use patterns::{
    check_patterns, check_rainbow_configs, PatternViolation, RainbowConfigReport, ViolationKind,
};
pub use rainbow::{queue_assignment, rainbow_number, QueueAssignment, Rainbow};
pub use report::{realizer_bound_report, BoundReport};

use crate::error::Result;
use crate::order::Poset;

/// A cover edge `lower ≺ upper` placed at positions `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub lower: usize,
    pub upper: usize,
    pub left: usize,
    pub right: usize,
}

impl Edge {
    /// `self` strictly contains `other`.
    #[inline]
    pub fn nests(&self, other: &Edge) -> bool {
        self.left < other.left && other.right < self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    order: Vec<usize>,
    pos: Vec<usize>,
    edges: Vec<Edge>,
}

impl Layout {
    /// Lays out the cover graph of `p` along `order`, which must be a linear
    /// extension. Edges keep the canonical cover-graph order.
    pub fn new(p: &Poset, order: &[usize]) -> Result<Self> {
        p.check_linear_extension(order)?;
        let pos = p.positions(order)?;
        let edges = p
            .cover_graph()
            .edges
            .into_iter()
            .map(|(lower, upper)| Edge {
                lower,
                upper,
                left: pos[lower],
                right: pos[upper],
            })
            .collect();
        Ok(Self {
            order: order.to_vec(),
            pos,
            edges,
        })
    }

    /// Layout along an order given by element names, e.g. one of the realizers.
    pub fn from_names(p: &Poset, names: &[String]) -> Result<Self> {
        let order = p.indices_of(names)?;
        Self::new(p, &order)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::order::RealizerPair;

    fn p2() -> Poset {
        Poset::from_realizers(
            &RealizerPair::new(["1", "2", "3", "4"], ["2", "1", "4", "3"]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn base_poset_intervals() {
        let l = Layout::new(&p2(), &[0, 1, 2, 3]).unwrap();
        let iv: Vec<_> = l
            .edges()
            .iter()
            .map(|e| (e.left + 1, e.right + 1))
            .collect();
        assert_eq!(iv, vec![(1, 3), (1, 4), (2, 3), (2, 4)]);
    }

    #[test]
    fn chain_intervals() {
        let c = Poset::from_relations(&["1", "2", "3"], &[("1", "2"), ("2", "3")]).unwrap();
        let l = Layout::new(&c, &[0, 1, 2]).unwrap();
        let iv: Vec<_> = l
            .edges()
            .iter()
            .map(|e| (e.left + 1, e.right + 1))
            .collect();
        assert_eq!(iv, vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn rejects_non_extension() {
        assert!(matches!(
            Layout::new(&p2(), &[2, 0, 1, 3]),
            Err(Error::NotLinearExtension { .. })
        ));
    }
}
