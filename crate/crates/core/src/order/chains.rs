//! Minimum chain covers and maximum antichains.
//!
//! Both come out of one maximum matching in the split graph of the closure:
//! left copy `u` is joined to right copy `v` whenever `u < v`. Matched edges
//! link elements into chains (`n - |M|` of them) and König's theorem turns
//! the matching into a vertex cover whose complement is an antichain of the
//! same size.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::order::Poset;

/// Assignment of every element to a chain, chain indices `0..count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPartition {
    chain_of: Vec<usize>,
    chains: Vec<Vec<usize>>,
}

impl ChainPartition {
    /// Validates a hand-made partition: every element has a chain and
    /// members of a chain are pairwise comparable.
    pub fn new(p: &Poset, chain_of: Vec<usize>) -> Result<Self> {
        if chain_of.len() != p.len() {
            return Err(Error::Input(format!(
                "chain partition covers {} of {} elements",
                chain_of.len(),
                p.len()
            )));
        }
        let count = chain_of.iter().max().map_or(0, |&c| c + 1);
        let mut chains = vec![Vec::new(); count];
        for (u, &c) in chain_of.iter().enumerate() {
            chains[c].push(u);
        }
        if let Some(c) = chains.iter().position(Vec::is_empty) {
            return Err(Error::Input(format!("chain index {c} is unused")));
        }
        for chain in &mut chains {
            for (i, &u) in chain.iter().enumerate() {
                if let Some(&v) = chain[i + 1..].iter().find(|&&v| !p.comparable(u, v)) {
                    return Err(Error::Input(format!(
                        "`{}` and `{}` share a chain but are incomparable",
                        p.name(u),
                        p.name(v)
                    )));
                }
            }
            chain.sort_by_key(|&u| p.below(u).count_ones(..));
        }
        Ok(Self { chain_of, chains })
    }

    #[inline]
    pub fn chain_of(&self, u: usize) -> usize {
        self.chain_of[u]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.chain_of
    }

    /// Chains, each listed bottom to top.
    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn count(&self) -> usize {
        self.chains.len()
    }

    pub fn covers_elements(&self, n: usize) -> bool {
        self.chain_of.len() == n
    }
}

struct Matching {
    /// `right_of[u] = v` when left `u` is matched to right `v`.
    right_of: Vec<Option<usize>>,
    left_of: Vec<Option<usize>>,
}

fn max_matching(p: &Poset) -> Matching {
    let n = p.len();
    let mut m = Matching {
        right_of: vec![None; n],
        left_of: vec![None; n],
    };
    let mut visited = vec![false; n];
    for u in 0..n {
        visited.iter_mut().for_each(|x| *x = false);
        augment(p, u, &mut m, &mut visited);
    }
    m
}

fn augment(p: &Poset, u: usize, m: &mut Matching, visited: &mut [bool]) -> bool {
    for v in p.above(u).ones() {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let free = match m.left_of[v] {
            None => true,
            Some(w) => augment(p, w, m, visited),
        };
        if free {
            m.right_of[u] = Some(v);
            m.left_of[v] = Some(u);
            return true;
        }
    }
    false
}

/// A minimum chain partition; its size equals the width.
pub fn min_chain_partition(p: &Poset) -> ChainPartition {
    let m = max_matching(p);
    let n = p.len();
    let mut chain_of = vec![usize::MAX; n];
    let mut chains = Vec::new();
    for start in 0..n {
        if m.left_of[start].is_some() {
            continue;
        }
        let c = chains.len();
        let mut chain = Vec::new();
        let mut cur = Some(start);
        while let Some(u) = cur {
            chain_of[u] = c;
            chain.push(u);
            cur = m.right_of[u];
        }
        chains.push(chain);
    }
    ChainPartition { chain_of, chains }
}

/// Width of the poset together with a maximum antichain (sorted indices).
pub fn width(p: &Poset) -> (usize, Vec<usize>) {
    let m = max_matching(p);
    let n = p.len();
    // Alternating reachability from unmatched left vertices.
    let mut left_seen = vec![false; n];
    let mut right_seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| m.right_of[u].is_none()).collect();
    for &u in &queue {
        left_seen[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for v in p.above(u).ones() {
            if right_seen[v] || m.right_of[u] == Some(v) {
                continue;
            }
            right_seen[v] = true;
            if let Some(w) = m.left_of[v] {
                if !left_seen[w] {
                    left_seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    // Cover = unreached left copies plus reached right copies; elements with
    // neither copy in the cover form the antichain.
    let antichain: Vec<usize> = (0..n).filter(|&x| left_seen[x] && !right_seen[x]).collect();
    debug_assert_eq!(antichain.len(), n - m.right_of.iter().flatten().count());
    (antichain.len(), antichain)
}
