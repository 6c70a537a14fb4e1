use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Two total orders over a common element set. The poset they realize is
/// their intersection: `u < v` iff `u` precedes `v` in both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizerPair {
    l1: Vec<String>,
    l2: Vec<String>,
}

impl RealizerPair {
    pub fn new<S: Into<String>>(
        l1: impl IntoIterator<Item = S>,
        l2: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let l1: Vec<String> = l1.into_iter().map(Into::into).collect();
        let l2: Vec<String> = l2.into_iter().map(Into::into).collect();
        if l1.len() != l2.len() {
            return Err(Error::MalformedRealizer(format!(
                "realizers have lengths {} and {}",
                l1.len(),
                l2.len()
            )));
        }
        let mut seen = HashSet::with_capacity(l1.len());
        for name in &l1 {
            if !seen.insert(name.as_str()) {
                return Err(Error::MalformedRealizer(format!("`{name}` repeated in l1")));
            }
        }
        let mut seen2 = HashSet::with_capacity(l2.len());
        for name in &l2 {
            if !seen.contains(name.as_str()) {
                return Err(Error::MalformedRealizer(format!(
                    "`{name}` in l2 but not in l1"
                )));
            }
            if !seen2.insert(name.as_str()) {
                return Err(Error::MalformedRealizer(format!("`{name}` repeated in l2")));
            }
        }
        Ok(Self { l1, l2 })
    }

    pub fn l1(&self) -> &[String] {
        &self.l1
    }

    pub fn l2(&self) -> &[String] {
        &self.l2
    }

    pub fn len(&self) -> usize {
        self.l1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l1.is_empty()
    }

    /// Realizers of the dual poset.
    pub fn reversed(&self) -> Self {
        Self {
            l1: self.l1.iter().rev().cloned().collect(),
            l2: self.l2.iter().rev().cloned().collect(),
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            l1: self.l2.clone(),
            l2: self.l1.clone(),
        }
    }
}

/// A finite strict partial order over named elements.
///
/// Elements are addressed by dense indices assigned in the order of the
/// element list. The relation is stored in transitive-closure form as one
/// bitset of strict successors and one of strict predecessors per element.
#[derive(Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<_> = self
            .relations()
            .map(|(u, v)| format!("{}<{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("lt", &rel)
            .finish()
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    if names.is_empty() {
        return Err(Error::Empty);
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// The poset whose relation is the intersection of the two realizers.
    /// Element indices follow `l1`.
    pub fn from_realizers(rp: &RealizerPair) -> Result<Self> {
        let names = rp.l1.clone();
        let index = index_names(&names)?;
        let n = names.len();
        let mut pos2 = vec![0; n];
        for (p, name) in rp.l2.iter().enumerate() {
            let i = *index
                .get(name)
                .ok_or_else(|| Error::MalformedRealizer(format!("`{name}` in l2 but not in l1")))?;
            pos2[i] = p;
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if pos2[u] < pos2[v] {
                    up[u].insert(v);
                    down[v].insert(u);
                }
            }
        }
        Ok(Self {
            names,
            index,
            up,
            down,
        })
    }

    /// Transitive closure of an explicit relation list. Fails with one cycle
    /// when the pairs are not acyclic.
    pub fn from_relations<S, T>(elements: &[S], pairs: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_owned()))
        };
        let mut succ = vec![Vec::new(); n];
        for (a, b) in pairs {
            let (u, v) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            succ[u].push(v);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let topo = topological_order(&succ)
            .map_err(|cycle| Error::Cycle(cycle.into_iter().map(|i| names[i].clone()).collect()))?;

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &u in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            for &v in &succ[u] {
                row.insert(v);
                row.union_with(&up[v]);
            }
            up[u] = row;
        }
        let down = transpose(&up);
        Ok(Self {
            names,
            index,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: construction rejects empty posets.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    #[inline]
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.up[u].contains(v)
    }

    #[inline]
    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.up[u].contains(v) || self.down[u].contains(v)
    }

    /// Strict successors of `u`.
    pub fn above(&self, u: usize) -> &FixedBitSet {
        &self.up[u]
    }

    /// Strict predecessors of `u`.
    pub fn below(&self, u: usize) -> &FixedBitSet {
        &self.down[u]
    }

    /// All pairs `(u, v)` with `u < v`, lexicographic by index.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    /// `u` covers-below `v`: `u < v` with nothing strictly between.
    pub fn covers(&self, u: usize, v: usize) -> bool {
        self.lt(u, v) && self.up[u].is_disjoint(&self.down[v])
    }

    pub fn cover_graph(&self) -> CoverGraph {
        let edges = self
            .relations()
            .filter(|&(u, v)| self.covers(u, v))
            .collect();
        CoverGraph { edges }
    }

    /// Same elements with the relation reversed.
    pub fn dual(&self) -> Self {
        Self {
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Same relation over new element names, index for index.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::Input(format!(
                "expected {} names, got {}",
                self.len(),
                names.len()
            )));
        }
        let index = index_names(&names)?;
        Ok(Self {
            names,
            index,
            up: self.up.clone(),
            down: self.down.clone(),
        })
    }

    pub fn is_linear_extension(&self, order: &[usize]) -> Result<bool> {
        match self.check_linear_extension(order) {
            Ok(()) => Ok(true),
            Err(Error::NotLinearExtension { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Like [`Poset::is_linear_extension`] but names one violated pair.
    pub fn check_linear_extension(&self, order: &[usize]) -> Result<()> {
        let pos = self.positions(order)?;
        for (u, v) in self.relations() {
            if pos[u] > pos[v] {
                return Err(Error::NotLinearExtension {
                    lower: self.names[u].clone(),
                    upper: self.names[v].clone(),
                });
            }
        }
        Ok(())
    }

    /// Inverse permutation of `order`, validating that it is a permutation.
    pub fn positions(&self, order: &[usize]) -> Result<Vec<usize>> {
        let n = self.len();
        if order.len() != n {
            return Err(Error::MalformedOrder(format!(
                "expected {n} elements, got {}",
                order.len()
            )));
        }
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::MalformedOrder(format!("index {v} out of range")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::MalformedOrder(format!(
                    "`{}` appears twice",
                    self.names[v]
                )));
            }
            pos[v] = p;
        }
        Ok(pos)
    }

    /// Some linear extension, smallest available index first.
    pub fn canonical_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.down.iter().map(|d| d.count_ones(..)).collect();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let u = (0..n)
                .find(|&u| !placed[u] && indeg[u] == 0)
                .expect("closure relation is acyclic");
            placed[u] = true;
            order.push(u);
            for v in self.up[u].ones() {
                indeg[v] -= 1;
            }
        }
        order
    }
}

/// Cover relations of a poset, sorted by `(u, v)` index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverGraph {
    pub edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn transpose(up: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = up.len();
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (u, row) in up.iter().enumerate() {
        for v in row.ones() {
            down[v].insert(u);
        }
    }
    down
}

/// Kahn's algorithm; on failure returns one cycle found by walking
/// predecessor links among the unprocessed vertices.
fn topological_order(succ: &[Vec<usize>]) -> Result<Vec<usize>, Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &v in s {
            indeg[v] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&u| indeg[u] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every leftover vertex has a leftover predecessor, so walking backwards
    // must revisit a vertex.
    let mut pred = vec![usize::MAX; n];
    for (u, s) in succ.iter().enumerate() {
        if indeg[u] == 0 {
            continue;
        }
        for &v in s {
            if indeg[v] > 0 {
                pred[v] = u;
            }
        }
    }
    let start = (0..n).find(|&u| indeg[u] > 0).unwrap();
    let mut seen = vec![false; n];
    let mut cur = start;
    while !seen[cur] {
        seen[cur] = true;
        cur = pred[cur];
    }
    let mut cycle = vec![cur];
    let mut x = pred[cur];
    while x != cur {
        cycle.push(x);
        x = pred[x];
    }
    cycle.reverse();
    cycle.push(cycle[0]);
    Err(cycle)
}
