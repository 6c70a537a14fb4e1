use crate::error::{Error, Result};
use crate::layout::Layout;

/// Pairwise nesting edges (indices into [`Layout::edges`]), outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rainbow {
    pub edges: Vec<usize>,
}

impl Rainbow {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Consecutive members nest strictly.
    pub fn is_valid(&self, l: &Layout) -> bool {
        let edges = l.edges();
        self.edges.iter().all(|&e| e < edges.len())
            && self
                .edges
                .windows(2)
                .all(|w| edges[w[0]].nests(&edges[w[1]]))
    }
}

/// Largest rainbow of the layout.
///
/// Nesting is the strict containment order on intervals, so the answer is a
/// longest chain in it: sort by left endpoint (ties by right ascending, so
/// equal-left edges can never both be chosen) and take a longest strictly
/// decreasing subsequence of right endpoints, patience style.
pub fn rainbow_number(l: &Layout) -> Rainbow {
    let edges = l.edges();
    let mut idx: Vec<usize> = (0..edges.len()).collect();
    idx.sort_by_key(|&e| (edges[e].left, edges[e].right));

    // tails[k]: edge ending a decreasing run of length k + 1 with the
    // largest possible final right endpoint.
    let mut tails: Vec<usize> = Vec::new();
    let mut prev = vec![usize::MAX; edges.len()];
    for &e in &idx {
        let r = edges[e].right;
        let k = tails.partition_point(|&t| edges[t].right > r);
        if k > 0 {
            prev[e] = tails[k - 1];
        }
        if k == tails.len() {
            tails.push(e);
        } else {
            tails[k] = e;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied().unwrap_or(usize::MAX);
    while cur != usize::MAX {
        out.push(cur);
        cur = prev[cur];
    }
    out.reverse();
    Rainbow { edges: out }
}

/// Queue index (1-based) per edge of a layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueueAssignment {
    pub queue_of: Vec<usize>,
    pub k: usize,
}

impl QueueAssignment {
    /// Pairwise scan for two nesting edges sharing a queue.
    pub fn validate(&self, l: &Layout) -> Result<()> {
        let edges = l.edges();
        if self.queue_of.len() != edges.len() {
            return Err(Error::Input(format!(
                "assignment covers {} of {} edges",
                self.queue_of.len(),
                edges.len()
            )));
        }
        if let Some(e) = self.queue_of.iter().position(|&q| q == 0 || q > self.k) {
            return Err(Error::Input(format!(
                "edge {e} has queue {} outside 1..={}",
                self.queue_of[e], self.k
            )));
        }
        for (i, a) in edges.iter().enumerate() {
            for (j, b) in edges.iter().enumerate() {
                if self.queue_of[i] == self.queue_of[j] && a.nests(b) {
                    return Err(Error::Input(format!(
                        "edges {i} and {j} nest inside queue {}",
                        self.queue_of[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn queue(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.queue_of
            .iter()
            .enumerate()
            .filter(move |&(_, &x)| x == q)
            .map(|(e, _)| e)
    }
}

/// Optimal assignment for a fixed order: each edge goes to its nesting
/// depth, the size of the largest rainbow in which it is innermost. Edges of
/// equal depth cannot nest, and the deepest edge closes a maximum rainbow.
pub fn queue_assignment(l: &Layout) -> QueueAssignment {
    let edges = l.edges();
    let mut idx: Vec<usize> = (0..edges.len()).collect();
    // Outer edges are strictly longer than anything they contain.
    idx.sort_by_key(|&e| std::cmp::Reverse(edges[e].right - edges[e].left));
    let mut depth = vec![0usize; edges.len()];
    for (i, &f) in idx.iter().enumerate() {
        depth[f] = 1 + idx[..i]
            .iter()
            .filter(|&&e| edges[e].nests(&edges[f]))
            .map(|&e| depth[e])
            .max()
            .unwrap_or(0);
    }
    let k = depth.iter().copied().max().unwrap_or(0);
    QueueAssignment { queue_of: depth, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_r, gen_random_2d};
    use crate::order::{Poset, RealizerPair};
    use proptest::prelude::*;

    fn p2() -> Poset {
        Poset::from_realizers(
            &RealizerPair::new(["1", "2", "3", "4"], ["2", "1", "4", "3"]).unwrap(),
        )
        .unwrap()
    }

    fn named(p: &Poset, l: &Layout, r: &Rainbow) -> Vec<(String, String)> {
        r.edges
            .iter()
            .map(|&e| {
                let e = l.edges()[e];
                (p.name(e.lower).to_owned(), p.name(e.upper).to_owned())
            })
            .collect()
    }

    /// Longest chain in the containment DAG by plain exhaustive DFS.
    fn brute_rainbow(l: &Layout) -> usize {
        fn dfs(l: &Layout, e: usize) -> usize {
            let edges = l.edges();
            1 + (0..edges.len())
                .filter(|&f| edges[e].nests(&edges[f]))
                .map(|f| dfs(l, f))
                .max()
                .unwrap_or(0)
        }
        (0..l.edge_count()).map(|e| dfs(l, e)).max().unwrap_or(0)
    }

    fn brute_valid(l: &Layout, qa: &QueueAssignment) -> bool {
        let edges = l.edges();
        (0..edges.len()).all(|i| {
            (0..edges.len()).all(|j| qa.queue_of[i] != qa.queue_of[j] || !edges[i].nests(&edges[j]))
        })
    }

    #[test]
    fn r2_rainbow_and_queues() {
        let g = gen_r(2).unwrap();
        let p = g.poset();
        let l = Layout::from_names(&p, g.realizers.l1()).unwrap();
        let r = rainbow_number(&l);
        assert!(r.is_valid(&l));
        assert_eq!(
            named(&p, &l, &r),
            vec![
                ("1".into(), "6".into()),
                ("2".into(), "5".into()),
                ("3".into(), "4".into())
            ]
        );
        let qa = queue_assignment(&l);
        assert_eq!(qa.k, 3);
        let q_of = |a: &str, b: &str| {
            let (a, b) = (p.index_of(a).unwrap(), p.index_of(b).unwrap());
            let e = l
                .edges()
                .iter()
                .position(|e| e.lower == a && e.upper == b)
                .unwrap();
            qa.queue_of[e]
        };
        assert_eq!(q_of("1", "6"), 1);
        assert_eq!(q_of("2", "5"), 2);
        assert_eq!(q_of("3", "4"), 3);
        // (1,2) and (4,6) share an endpoint with (1,6); (4,5) sits inside (1,6) only
        assert_eq!(q_of("1", "2"), 1);
        assert_eq!(q_of("4", "5"), 2);
        assert_eq!(q_of("4", "6"), 1);
        qa.validate(&l).unwrap();
    }

    #[test]
    fn chain_rainbow_is_one() {
        for n in 2..8 {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let p =
                Poset::from_realizers(&RealizerPair::new(names.clone(), names).unwrap()).unwrap();
            let l = Layout::new(&p, &(0..n).collect::<Vec<_>>()).unwrap();
            assert_eq!(rainbow_number(&l).len(), 1);
        }
    }

    #[test]
    fn base_poset_rainbow() {
        let p = p2();
        let l = Layout::new(&p, &[0, 1, 2, 3]).unwrap();
        let r = rainbow_number(&l);
        assert_eq!(r.len(), 2);
        assert_eq!(
            named(&p, &l, &r),
            vec![("1".into(), "4".into()), ("2".into(), "3".into())]
        );
        assert_eq!(queue_assignment(&l).k, 2);
    }

    #[test]
    fn edgeless_layout() {
        let p = Poset::from_realizers(&RealizerPair::new(["a", "b"], ["b", "a"]).unwrap()).unwrap();
        let l = Layout::new(&p, &[0, 1]).unwrap();
        assert!(rainbow_number(&l).is_empty());
        assert_eq!(queue_assignment(&l).k, 0);
    }

    #[test]
    fn shared_left_endpoints_do_not_nest() {
        // 1 < 2, 1 < 3 with 2 || 3: edges [1,2] and [1,3] share their left end.
        let p = Poset::from_relations(&["1", "2", "3"], &[("1", "2"), ("1", "3")]).unwrap();
        let l = Layout::new(&p, &[0, 1, 2]).unwrap();
        assert_eq!(rainbow_number(&l).len(), 1);
    }

    #[test]
    fn validate_catches_bad_assignments() {
        let p = p2();
        let l = Layout::new(&p, &[0, 1, 2, 3]).unwrap();
        let bad = QueueAssignment {
            queue_of: vec![1; 4],
            k: 1,
        };
        assert!(bad.validate(&l).is_err());
        assert!(!brute_valid(&l, &bad));
        let short = QueueAssignment {
            queue_of: vec![1; 3],
            k: 1,
        };
        assert!(short.validate(&l).is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(n in 1usize..14, seed in any::<u64>(), perm_seed in any::<u64>()) {
            let g = gen_random_2d(n, seed).unwrap();
            let p = g.poset();
            // a random linear extension: random topological order
            let mut order = Vec::new();
            let mut placed = vec![false; n];
            let mut state = perm_seed | 1;
            while order.len() < n {
                let avail: Vec<usize> = (0..n)
                    .filter(|&u| !placed[u] && p.below(u).ones().all(|d| placed[d]))
                    .collect();
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                let u = avail[(state % avail.len() as u64) as usize];
                placed[u] = true;
                order.push(u);
            }
            let l = Layout::new(&p, &order).unwrap();
            prop_assume!(l.edge_count() <= 20);
            let r = rainbow_number(&l);
            prop_assert!(r.is_valid(&l));
            prop_assert_eq!(r.len(), brute_rainbow(&l));
            let qa = queue_assignment(&l);
            prop_assert_eq!(qa.k, r.len());
            prop_assert!(brute_valid(&l, &qa));
        }
    }
}
