//! CNF encoding of "the poset has a layout with at most `k` queues".
//!
//! Variables, numbered from 1:
//!
//! * order variables, one per unordered pair `i < j` of element indices in
//!   lexicographic pair order; true means element `i` precedes element `j`;
//! * queue variables, one per (cover edge, queue) in edge-rank-major order;
//!   true means the edge may use that queue.
//!
//! Clause families, in emission order:
//!
//! 1. a unit clause per comparable pair fixing its order variable;
//! 2. per unordered triple, the two cyclic orientations forbidden;
//! 3. per cover edge, at least one queue;
//! 4. per ordered pair of vertex-disjoint edges `e = (a, b)`, `f = (c, d)`
//!    and queue `q`: `a` before `c` and `d` before `b` forbids both in `q`.
//!
//! At-most-one queue per edge is not encoded; decoding takes the lowest.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::layout::{Layout, QueueAssignment};
use crate::order::Poset;

/// Clause counts per family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClauseCounts {
    pub comparable: usize,
    pub transitivity: usize,
    pub at_least_one: usize,
    pub nesting: usize,
}

impl ClauseCounts {
    pub fn total(&self) -> usize {
        self.comparable + self.transitivity + self.at_least_one + self.nesting
    }
}

#[derive(Clone, Debug)]
pub struct CnfInstance {
    poset: Poset,
    k: usize,
    edges: Vec<(usize, usize)>,
    clauses: Vec<Vec<i32>>,
    counts: ClauseCounts,
    digest: String,
}

/// SHA-256 over the element names and the closure relation.
pub fn poset_digest(p: &Poset) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}\n", p.len()));
    for name in p.names() {
        h.update(name.as_bytes());
        h.update(b"\n");
    }
    for (u, v) in p.relations() {
        h.update(format!("{u} {v}\n"));
    }
    hex::encode(h.finalize())
}

impl CnfInstance {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn counts(&self) -> ClauseCounts {
        self.counts
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn order_var_count(&self) -> usize {
        let n = self.poset.len();
        n * (n - 1) / 2
    }

    pub fn var_count(&self) -> usize {
        self.order_var_count() + self.edges.len() * self.k
    }

    /// Variable for the pair `i < j`: true iff `i` precedes `j`.
    pub fn order_var(&self, i: usize, j: usize) -> i32 {
        debug_assert!(i < j);
        let n = self.poset.len();
        (i * (2 * n - i - 1) / 2 + (j - i - 1) + 1) as i32
    }

    /// Literal for "`a` precedes `b`".
    pub fn precedes(&self, a: usize, b: usize) -> i32 {
        if a < b {
            self.order_var(a, b)
        } else {
            -self.order_var(b, a)
        }
    }

    /// Variable for edge rank `e` in queue `q` (0-based).
    pub fn queue_var(&self, e: usize, q: usize) -> i32 {
        (self.order_var_count() + e * self.k + q + 1) as i32
    }

    pub fn to_dimacs(&self) -> String {
        let p = &self.poset;
        let n = p.len();
        let orders = self.order_var_count();
        let mut out = String::new();
        // writing to a String cannot fail
        let _ = writeln!(out, "c queue layout with at most {} queues", self.k);
        let _ = writeln!(out, "c poset sha256 {}", self.digest);
        let _ = writeln!(
            out,
            "c elements {n}, cover edges {}, queues {}",
            self.edges.len(),
            self.k
        );
        let _ = writeln!(
            out,
            "c order vars 1..={orders}: pair (i,j), i<j, lexicographic; true iff i precedes j"
        );
        let _ = writeln!(
            out,
            "c queue vars {}..={}: {orders} + e*{} + q + 1 for edge e, queue q (0-based)",
            orders + 1,
            self.var_count(),
            self.k
        );
        let c = self.counts;
        let _ = writeln!(
            out,
            "c clauses: {} comparable, {} transitivity, {} at-least-one, {} nesting",
            c.comparable, c.transitivity, c.at_least_one, c.nesting
        );
        for (i, name) in p.names().iter().enumerate() {
            let _ = writeln!(out, "c element {i} {name}");
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "c edge {e} {} {}", p.name(u), p.name(v));
        }
        let _ = writeln!(out, "p cnf {} {}", self.var_count(), self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

pub fn encode_cnf(p: &Poset, k: usize) -> Result<CnfInstance> {
    if k == 0 {
        return Err(Error::Parameter("queue budget k must be at least 1".into()));
    }
    let n = p.len();
    let mut inst = CnfInstance {
        poset: p.clone(),
        k,
        edges: p.cover_graph().edges,
        clauses: Vec::new(),
        counts: ClauseCounts::default(),
        digest: poset_digest(p),
    };
    let mut clauses = Vec::new();
    let mut counts = ClauseCounts::default();

    for i in 0..n {
        for j in i + 1..n {
            if p.lt(i, j) {
                clauses.push(vec![inst.order_var(i, j)]);
            } else if p.lt(j, i) {
                clauses.push(vec![-inst.order_var(i, j)]);
            } else {
                continue;
            }
            counts.comparable += 1;
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let (ij, jl, il) = (
                    inst.order_var(i, j),
                    inst.order_var(j, l),
                    inst.order_var(i, l),
                );
                // i -> j -> l -> i
                clauses.push(vec![-ij, -jl, il]);
                // i -> l -> j -> i
                clauses.push(vec![ij, jl, -il]);
                counts.transitivity += 2;
            }
        }
    }

    for e in 0..inst.edges.len() {
        clauses.push((0..k).map(|q| inst.queue_var(e, q)).collect());
        counts.at_least_one += 1;
    }

    for (e, &(a, b)) in inst.edges.iter().enumerate() {
        for (f, &(c, d)) in inst.edges.iter().enumerate() {
            if e == f || a == c || a == d || b == c || b == d {
                continue;
            }
            let (ac, db) = (inst.precedes(a, c), inst.precedes(d, b));
            for q in 0..k {
                clauses.push(vec![-ac, -db, -inst.queue_var(e, q), -inst.queue_var(f, q)]);
                counts.nesting += 1;
            }
        }
    }

    inst.clauses = clauses;
    inst.counts = counts;
    Ok(inst)
}

/// Truth assignment read from solver output; variables never mentioned are
/// false.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    values: Vec<Option<bool>>,
}

impl Model {
    pub fn from_literals(lits: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut model = Model::default();
        for lit in lits {
            model.set(lit)?;
        }
        Ok(model)
    }

    fn set(&mut self, lit: i32) -> Result<()> {
        let var = lit.unsigned_abs() as usize;
        if self.values.len() <= var {
            self.values.resize(var + 1, None);
        }
        let val = lit > 0;
        match self.values[var] {
            Some(old) if old != val => Err(Error::InvalidModel(format!(
                "variable {var} assigned both ways"
            ))),
            _ => {
                self.values[var] = Some(val);
                Ok(())
            }
        }
    }

    /// Accepts bare literal lines and `v `-prefixed competition output;
    /// comment and `s SATISFIABLE` / `SAT` lines are skipped. Reading stops
    /// at literal 0 or end of input. An UNSAT status is reported as
    /// [`Error::Unsatisfiable`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut model = Model::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let upper = line.to_ascii_uppercase();
            let status = upper.strip_prefix("S ").unwrap_or(&upper).trim();
            match status {
                "SAT" | "SATISFIABLE" => continue,
                "UNSAT" | "UNSATISFIABLE" => return Err(Error::Unsatisfiable),
                "UNKNOWN" | "INDETERMINATE" | "TIMEOUT" => {
                    return Err(Error::InvalidModel(format!("solver status `{line}`")))
                }
                _ => {}
            }
            let body = line.strip_prefix('v').unwrap_or(line);
            for tok in body.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| {
                    Error::InvalidModel(format!("line {}: bad literal `{tok}`", lineno + 1))
                })?;
                if lit == 0 {
                    return Ok(model);
                }
                model.set(lit)?;
            }
        }
        Ok(model)
    }

    pub fn value(&self, var: i32) -> bool {
        self.values
            .get(var as usize)
            .copied()
            .flatten()
            .unwrap_or(false)
    }

    pub fn lit(&self, lit: i32) -> bool {
        if lit > 0 {
            self.value(lit)
        } else {
            !self.value(-lit)
        }
    }

    pub fn to_literals(&self, vars: usize) -> Vec<i32> {
        (1..=vars as i32)
            .map(|v| if self.value(v) { v } else { -v })
            .collect()
    }
}

/// A layout recovered from a model, validated against the poset.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub order: Vec<usize>,
    pub layout: Layout,
    pub assignment: QueueAssignment,
}

pub fn decode_model(c: &CnfInstance, model: &Model) -> Result<Decoded> {
    if let Some(i) = c
        .clauses
        .iter()
        .position(|cl| !cl.iter().any(|&l| model.lit(l)))
    {
        return Err(Error::InvalidModel(format!(
            "clause {} ({:?}) is falsified",
            i + 1,
            c.clauses[i]
        )));
    }
    let p = &c.poset;
    let n = p.len();
    // rank = number of elements placed before
    let mut rank = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if model.value(c.order_var(i, j)) {
                rank[j] += 1;
            } else {
                rank[i] += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| rank[v]);
    if order.iter().enumerate().any(|(r, &v)| rank[v] != r) {
        return Err(Error::Internal(
            "decoded precedence is not a total order".into(),
        ));
    }
    let layout = Layout::new(p, &order)
        .map_err(|e| Error::Internal(format!("decoded order rejected: {e}")))?;

    let mut queue_of = Vec::with_capacity(c.edges.len());
    for e in 0..c.edges.len() {
        let q = (0..c.k)
            .find(|&q| model.value(c.queue_var(e, q)))
            .ok_or_else(|| Error::Internal(format!("edge {e} has no queue")))?;
        queue_of.push(q + 1);
    }
    let assignment = QueueAssignment { queue_of, k: c.k };
    assignment
        .validate(&layout)
        .map_err(|e| Error::Internal(format!("decoded queues rejected: {e}")))?;
    Ok(Decoded {
        order,
        layout,
        assignment,
    })
}

/// Reads a DIMACS CNF: returns the declared variable count and the clauses.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let bad = |what: &str| Error::Input(format!("DIMACS line {}: {what}", lineno + 1));
        if let Some(rest) = line.strip_prefix("p ") {
            let f: Vec<&str> = rest.split_whitespace().collect();
            match f.as_slice() {
                ["cnf", v, c] => {
                    header = Some((
                        v.parse().map_err(|_| bad("bad variable count"))?,
                        c.parse().map_err(|_| bad("bad clause count"))?,
                    ))
                }
                _ => return Err(bad("malformed header")),
            }
            continue;
        }
        if header.is_none() {
            return Err(bad("clause before header"));
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| bad("bad literal"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::Input("DIMACS header missing".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::Input(format!(
            "header declares {count} clauses, found {}",
            clauses.len()
        )));
    }
    Ok((vars, clauses))
}
