use std::time::Instant;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::layout::{queue_assignment, rainbow_number, Layout};
use crate::order::{Poset, RealizerPair};
use crate::solver::{SolveResult, SolveStats};

#[derive(Clone, Debug)]
pub struct BnbOptions {
    pub node_limit: u64,
    /// Cut branches whose placed edges already hold a rainbow as large as
    /// the incumbent. Disabling it enumerates every linear extension.
    pub prune: bool,
    /// Starting incumbent; defaults to the canonical extension.
    pub initial_order: Option<Vec<usize>>,
}

impl Default for BnbOptions {
    fn default() -> Self {
        Self {
            node_limit: 50_000_000,
            prune: true,
            initial_order: None,
        }
    }
}

/// Largest poset [`brute_force_qn`] accepts.
pub const BRUTE_FORCE_MAX: usize = 10;

/// Edges end at the position they were placed at, so every placed edge ends
/// before any new one and only left endpoints decide containment.
struct PlacedEdge {
    left: usize,
    /// Largest rainbow with this edge outermost. Everything it can contain
    /// is already placed when it is, so the value never changes.
    depth: usize,
}

struct Bnb<'a> {
    p: &'a Poset,
    lower_covers: Vec<Vec<usize>>,
    prune: bool,
    limit: u64,
    nodes: u64,
    floor: usize,

    pos: Vec<usize>,
    order: Vec<usize>,
    placed: FixedBitSet,
    pending_below: Vec<usize>,
    edges: Vec<PlacedEdge>,

    best: usize,
    best_order: Vec<usize>,
}

impl Bnb<'_> {
    fn done(&self) -> bool {
        self.prune && self.best <= self.floor
    }

    fn search(&mut self, current: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::ResourceLimit { limit: self.limit });
        }
        let n = self.p.len();
        let depth = self.order.len();
        if depth == n {
            if current < self.best {
                self.best = current;
                self.best_order.clone_from(&self.order);
            }
            return Ok(());
        }
        for v in 0..n {
            if self.placed.contains(v) || self.pending_below[v] > 0 {
                continue;
            }
            // place v at `depth`; its incoming covers end here
            let mark = self.edges.len();
            let mut next = current;
            for i in 0..self.lower_covers[v].len() {
                let left = self.pos[self.lower_covers[v][i]];
                let inner = self.edges[..mark]
                    .iter()
                    .filter(|e| e.left > left)
                    .map(|e| e.depth)
                    .max()
                    .unwrap_or(0);
                next = next.max(inner + 1);
                self.edges.push(PlacedEdge {
                    left,
                    depth: inner + 1,
                });
            }
            if !(self.prune && next >= self.best) {
                self.placed.insert(v);
                self.pos[v] = depth;
                self.order.push(v);
                for u in self.p.above(v).ones() {
                    self.pending_below[u] -= 1;
                }
                let res = self.search(next);
                for u in self.p.above(v).ones() {
                    self.pending_below[u] += 1;
                }
                self.order.pop();
                self.placed.set(v, false);
                res?;
            }
            self.edges.truncate(mark);
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

fn finish(p: &Poset, order: Vec<usize>, optimal: bool, stats: SolveStats) -> Result<SolveResult> {
    let layout = Layout::new(p, &order)?;
    let assignment = queue_assignment(&layout);
    Ok(SolveResult {
        qn: assignment.k,
        order,
        assignment,
        optimal,
        stats,
    })
}

/// Minimum over all linear extensions of the largest rainbow, by depth-first
/// search that appends a currently minimal element at each step.
///
/// Prefixes are not memoised by their down-set: the rainbows already formed
/// depend on how the prefix is arranged, not just on which elements it holds.
pub fn exact_qn_bnb(p: &Poset, opts: &BnbOptions) -> Result<SolveResult> {
    let start = Instant::now();
    let n = p.len();
    let initial = match &opts.initial_order {
        Some(order) => {
            p.check_linear_extension(order)?;
            order.clone()
        }
        None => p.canonical_extension(),
    };
    let incumbent = rainbow_number(&Layout::new(p, &initial)?).len();

    let mut lower_covers = vec![Vec::new(); n];
    let covers = p.cover_graph();
    for &(u, v) in &covers.edges {
        lower_covers[v].push(u);
    }
    let mut bnb = Bnb {
        p,
        lower_covers,
        prune: opts.prune,
        limit: opts.node_limit,
        nodes: 0,
        floor: usize::from(!covers.is_empty()),
        pos: vec![usize::MAX; n],
        order: Vec::with_capacity(n),
        placed: FixedBitSet::with_capacity(n),
        pending_below: (0..n).map(|v| p.below(v).count_ones(..)).collect(),
        edges: Vec::with_capacity(covers.len()),
        best: if opts.prune { incumbent } else { usize::MAX },
        best_order: initial,
    };
    let outcome = if bnb.done() { Ok(()) } else { bnb.search(0) };
    let stats = SolveStats {
        nodes: bnb.nodes,
        elapsed: start.elapsed(),
    };
    match outcome {
        Ok(()) => finish(p, bnb.best_order, true, stats),
        Err(Error::ResourceLimit { limit }) => Err(Error::NodeLimit {
            limit,
            incumbent: Box::new(finish(p, bnb.best_order, false, stats)?),
        }),
        Err(e) => Err(e),
    }
}

/// [`exact_qn_bnb`] seeded with the better of the two realizer layouts.
pub fn exact_qn_realizers(rp: &RealizerPair, opts: &BnbOptions) -> Result<(Poset, SolveResult)> {
    let p = Poset::from_realizers(rp)?;
    let l1 = p.indices_of(rp.l1())?;
    let l2 = p.indices_of(rp.l2())?;
    let r = |o: &[usize]| Layout::new(&p, o).map(|l| rainbow_number(&l).len());
    let initial = if r(&l2)? < r(&l1)? { l2 } else { l1 };
    let opts = BnbOptions {
        initial_order: Some(initial),
        ..opts.clone()
    };
    let res = exact_qn_bnb(&p, &opts)?;
    Ok((p, res))
}

/// Exhaustive oracle: every linear extension laid out and measured from
/// scratch.
pub fn brute_force_qn(p: &Poset) -> Result<SolveResult> {
    let start = Instant::now();
    let n = p.len();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::SizeLimit {
            size: n,
            limit: BRUTE_FORCE_MAX,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut nodes = 0;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    enumerate(p, &mut order, &mut used, &mut |ext| {
        nodes += 1;
        let r = rainbow_number(&Layout::new(p, ext).expect("enumerated a linear extension")).len();
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, ext.to_vec()));
        }
    });
    let (_, order) = best.expect("every poset has a linear extension");
    let stats = SolveStats {
        nodes,
        elapsed: start.elapsed(),
    };
    finish(p, order, true, stats)
}

fn enumerate(
    p: &Poset,
    order: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]),
) {
    let n = p.len();
    if order.len() == n {
        visit(order);
        return;
    }
    for v in 0..n {
        if used[v] || p.below(v).ones().any(|u| !used[u]) {
            continue;
        }
        used[v] = true;
        order.push(v);
        enumerate(p, order, used, visit);
        order.pop();
        used[v] = false;
    }
}

/// Number of linear extensions, for tests and reporting on tiny posets.
pub fn count_linear_extensions(p: &Poset) -> u64 {
    let mut count = 0;
    let mut order = Vec::new();
    let mut used = vec![false; p.len()];
    enumerate(p, &mut order, &mut used, &mut |_| count += 1);
    count
}
