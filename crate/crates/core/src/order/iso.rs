//! Exact poset isomorphism by backtracking over colour classes.
//!
//! Both posets are refined together (colour refinement on the comparability
//! and cover relations of their disjoint union) so that colours are directly
//! comparable across them. Candidates for an element are the unused elements
//! of the other poset with the same colour that agree on every relation with
//! the elements already mapped.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::order::Poset;

#[derive(Clone, Debug)]
pub struct IsoOptions {
    /// Largest poset the search accepts.
    pub max_elements: usize,
    /// Backtracking node budget.
    pub node_limit: u64,
    /// Pairs `(u in p, v in q)` the bijection must contain.
    pub fixed: Vec<(usize, usize)>,
}

impl Default for IsoOptions {
    fn default() -> Self {
        Self {
            max_elements: 60,
            node_limit: 10_000_000,
            fixed: Vec::new(),
        }
    }
}

impl IsoOptions {
    pub fn with_max_elements(mut self, max: usize) -> Self {
        self.max_elements = max;
        self
    }

    pub fn fixing(mut self, u: usize, v: usize) -> Self {
        self.fixed.push((u, v));
        self
    }
}

/// Relation-preserving bijection `p -> q` (as `map[u] = v`), or `None`.
pub fn isomorphic(p: &Poset, q: &Poset, opts: &IsoOptions) -> Result<Option<Vec<usize>>> {
    let n = p.len();
    for size in [n, q.len()] {
        if size > opts.max_elements {
            return Err(Error::SizeLimit {
                size,
                limit: opts.max_elements,
            });
        }
    }
    if n != q.len() || p.relation_count() != q.relation_count() {
        return Ok(None);
    }
    for &(u, v) in &opts.fixed {
        if u >= n || v >= n {
            return Err(Error::Input(format!("fixed pair ({u}, {v}) out of range")));
        }
    }

    let (cp, cq) = refine(p, q, &opts.fixed);
    let mut hist: HashMap<usize, isize> = HashMap::new();
    for &c in &cp {
        *hist.entry(c).or_default() += 1;
    }
    for &c in &cq {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&d| d != 0) {
        return Ok(None);
    }

    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &cp {
        *class_size.entry(c).or_default() += 1;
    }
    // Fixed pairs first, then small colour classes.
    let mut order: Vec<usize> = opts.fixed.iter().map(|&(u, _)| u).collect();
    let mut rest: Vec<usize> = (0..n).filter(|u| !order.contains(u)).collect();
    rest.sort_by_key(|&u| (class_size[&cp[u]], cp[u], u));
    order.extend(rest);

    let mut search = Search {
        p,
        q,
        cp: &cp,
        cq: &cq,
        order: &order,
        fixed: &opts.fixed,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        limit: opts.node_limit,
    };
    if search.extend(0)? {
        Ok(Some(search.map))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    cp: &'a [usize],
    cq: &'a [usize],
    order: &'a [usize],
    fixed: &'a [(usize, usize)],
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn consistent(&self, u: usize, v: usize, depth: usize) -> bool {
        self.order[..depth].iter().all(|&x| {
            let y = self.map[x];
            self.p.lt(u, x) == self.q.lt(v, y) && self.p.lt(x, u) == self.q.lt(y, v)
        })
    }

    fn extend(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::ResourceLimit { limit: self.limit });
        }
        let u = self.order[depth];
        let candidates: Vec<usize> = match self.fixed.get(depth) {
            Some(&(_, v)) => vec![v],
            None => (0..self.q.len())
                .filter(|&v| !self.used[v] && self.cq[v] == self.cp[u])
                .collect(),
        };
        for v in candidates {
            if self.used[v] || self.cq[v] != self.cp[u] || !self.consistent(u, v, depth) {
                continue;
            }
            self.map[u] = v;
            self.used[v] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.used[v] = false;
            self.map[u] = usize::MAX;
        }
        Ok(false)
    }
}

/// Joint colour refinement; fixed pairs get private colours up front.
fn refine(p: &Poset, q: &Poset, fixed: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let n = p.len();
    let posets = [p, q];
    let mut colors: [Vec<usize>; 2] = [vec![0; n], vec![0; n]];
    for (i, &(u, v)) in fixed.iter().enumerate() {
        colors[0][u] = i + 1;
        colors[1][v] = i + 1;
    }
    let mut classes = 0;
    loop {
        let mut sigs: Vec<(Vec<usize>, usize, usize)> = Vec::with_capacity(2 * n);
        for side in 0..2 {
            let g = posets[side];
            let c = &colors[side];
            for u in 0..n {
                let mut sig = vec![c[u]];
                for (tag, nbrs) in [
                    (0, g.above(u).ones().collect::<Vec<_>>()),
                    (1, g.below(u).ones().collect()),
                ] {
                    let mut cs: Vec<usize> = nbrs.iter().map(|&v| c[v]).collect();
                    cs.sort_unstable();
                    sig.push(usize::MAX - tag);
                    sig.extend(cs);
                    let mut cov: Vec<usize> = nbrs
                        .iter()
                        .filter(|&&v| {
                            if tag == 0 {
                                g.covers(u, v)
                            } else {
                                g.covers(v, u)
                            }
                        })
                        .map(|&v| c[v])
                        .collect();
                    cov.sort_unstable();
                    sig.push(usize::MAX - 2 - tag);
                    sig.extend(cov);
                }
                sigs.push((sig, side, u));
            }
        }
        sigs.sort();
        let mut next = [vec![0; n], vec![0; n]];
        let mut id = 0;
        for i in 0..sigs.len() {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                id += 1;
            }
            next[sigs[i].1][sigs[i].2] = id;
        }
        let count = id + 1;
        colors = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let [a, b] = colors;
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::RealizerPair;

    fn from(l1: &[&str], l2: &[&str]) -> Poset {
        Poset::from_realizers(&RealizerPair::new(l1.iter().copied(), l2.iter().copied()).unwrap())
            .unwrap()
    }

    fn assert_iso(p: &Poset, q: &Poset, map: &[usize]) {
        for u in 0..p.len() {
            for v in 0..p.len() {
                assert_eq!(p.lt(u, v), q.lt(map[u], map[v]));
            }
        }
    }

    #[test]
    fn self_isomorphism() {
        let p = from(&["1", "2", "3", "4"], &["2", "1", "4", "3"]);
        let map = isomorphic(&p, &p, &IsoOptions::default()).unwrap().unwrap();
        assert_iso(&p, &p, &map);
        let id = isomorphic(&p, &p, &IsoOptions::default().fixing(0, 0).fixing(1, 1))
            .unwrap()
            .unwrap();
        assert_eq!(id, vec![0, 1, 2, 3]);
    }

    #[test]
    fn chain_vs_antichain() {
        let c = from(&["1", "2", "3"], &["1", "2", "3"]);
        let a = from(&["1", "2", "3"], &["3", "2", "1"]);
        assert_eq!(isomorphic(&c, &a, &IsoOptions::default()).unwrap(), None);
    }

    #[test]
    fn base_poset_is_self_dual() {
        let p = from(&["1", "2", "3", "4"], &["2", "1", "4", "3"]);
        let d = p.dual();
        let map = isomorphic(&p, &d, &IsoOptions::default()).unwrap().unwrap();
        assert_iso(&p, &d, &map);
        // an impossible pinning: minimal 1 onto a minimal element of the dual
        assert_eq!(
            isomorphic(&p, &d, &IsoOptions::default().fixing(0, 0)).unwrap(),
            None
        );
    }

    #[test]
    fn size_guard() {
        let p = from(&["1", "2", "3", "4"], &["2", "1", "4", "3"]);
        let err = isomorphic(&p, &p, &IsoOptions::default().with_max_elements(3)).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { size: 4, limit: 3 }));
    }

    #[test]
    fn relabelled_random_posets_are_found() {
        use rand_chacha::ChaCha8Rng;
        use rand_core::{RngCore, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = 2 + (rng.next_u32() % 25) as usize;
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut l2 = names.clone();
            for i in (1..n).rev() {
                l2.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
            }
            let p = Poset::from_realizers(&RealizerPair::new(names.clone(), l2).unwrap()).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
            }
            // q has element perm[u] playing the role of u
            let pairs: Vec<(String, String)> = p
                .relations()
                .map(|(u, v)| (names[perm[u]].clone(), names[perm[v]].clone()))
                .collect();
            let q = Poset::from_relations(&names, &pairs).unwrap();
            let map = isomorphic(&p, &q, &IsoOptions::default()).unwrap().unwrap();
            assert_iso(&p, &q, &map);
        }
    }
}
