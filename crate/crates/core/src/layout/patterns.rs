//! Forbidden configurations of realizer-based layouts.
//!
//! With a chain partition `C` fixed, a layout along a realizer of a
//! two-dimensional poset avoids:
//!
//! * `bbb`: `[b1, b2, b3]` in one chain with `b1 ≺ b3` (any linear extension);
//! * `abc`: `[a1, b, a2]`, `C(a1) = C(a2)`, with `a1 ∥ b` and `b ∥ a2`;
//! * `abaab`: `[a1, b2, a, a2, b1]`, `a1, a, a2` in one chain, `b1, b2` in
//!   another, `a1 ≺ b1` and `b2 ≺ a2`.
//!
//! A maximum rainbow of such a layout further avoids two edges with the same
//! (lower chain, upper chain) pair, configuration (i) (edges `A→B`, `B→A`,
//! `A→A`) and configuration (ii) (edges `A→B`, `B→A`, `A→C`, `C→A`).
//!
//! Every checker reports all occurrences, sorted by witness positions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{Layout, Rainbow};
use crate::order::{ChainPartition, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Bbb,
    Abc,
    Abaab,
    ConfigI,
    ConfigIi,
    TransitiveNest,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Bbb => "bbb",
            ViolationKind::Abc => "abc",
            ViolationKind::Abaab => "abaab",
            ViolationKind::ConfigI => "config-i",
            ViolationKind::ConfigIi => "config-ii",
            ViolationKind::TransitiveNest => "transitive-nest",
        })
    }
}

/// One occurrence of a pattern. `elements` lists the witness in the order
/// the pattern names it; `edges` holds layout edge indices for rainbow
/// configurations, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternViolation {
    pub kind: ViolationKind,
    pub elements: Vec<usize>,
    pub edges: Vec<usize>,
}

impl PatternViolation {
    fn sort_key(&self, l: &Layout) -> Vec<usize> {
        let mut key: Vec<usize> = if self.edges.is_empty() {
            self.elements.iter().map(|&v| l.position(v)).collect()
        } else {
            self.edges
                .iter()
                .flat_map(|&e| [l.edges()[e].left, l.edges()[e].right])
                .collect()
        };
        key.sort_unstable();
        key
    }

    /// Re-checks the witness against its pattern definition.
    pub fn holds(&self, p: &Poset, l: &Layout, c: &ChainPartition) -> bool {
        let pos = |v: usize| l.position(v);
        let ch = |v: usize| c.chain_of(v);
        let increasing = |vs: &[usize]| vs.windows(2).all(|w| pos(w[0]) < pos(w[1]));
        match (self.kind, self.elements.as_slice()) {
            (ViolationKind::Bbb, &[b1, b2, b3]) => {
                increasing(&[b1, b2, b3])
                    && ch(b1) == ch(b2)
                    && ch(b2) == ch(b3)
                    && p.covers(b1, b3)
            }
            (ViolationKind::Abc, &[a1, b, a2]) => {
                increasing(&[a1, b, a2])
                    && ch(a1) == ch(a2)
                    && !p.comparable(a1, b)
                    && !p.comparable(b, a2)
            }
            (ViolationKind::Abaab, &[a1, b2, a, a2, b1]) => {
                increasing(&[a1, b2, a, a2, b1])
                    && ch(a1) == ch(a)
                    && ch(a) == ch(a2)
                    && ch(b1) == ch(b2)
                    && p.covers(a1, b1)
                    && p.covers(b2, a2)
            }
            (kind, _) if !self.edges.is_empty() => {
                let sig: Vec<(usize, usize)> = self
                    .edges
                    .iter()
                    .map(|&e| {
                        let e = l.edges()[e];
                        (ch(e.lower), ch(e.upper))
                    })
                    .collect();
                let nested = self
                    .edges
                    .windows(2)
                    .all(|w| l.edges()[w[0]].nests(&l.edges()[w[1]]));
                nested && signature_matches(kind, &sig)
            }
            _ => false,
        }
    }
}

/// Whether some reading of the chain pairs matches the configuration.
fn signature_matches(kind: ViolationKind, sig: &[(usize, usize)]) -> bool {
    let has = |pair: (usize, usize)| sig.contains(&pair);
    match (kind, sig.len()) {
        (ViolationKind::TransitiveNest, 2) => sig[0] == sig[1],
        (ViolationKind::ConfigI, 3) => sig
            .iter()
            .any(|&(a, b)| a != b && has((b, a)) && has((a, a))),
        (ViolationKind::ConfigIi, 4) => sig.iter().any(|&(a, b)| {
            a != b
                && has((b, a))
                && sig
                    .iter()
                    .any(|&(x, c)| x == a && c != a && c != b && has((c, a)))
        }),
        _ => false,
    }
}

fn require_partition(l: &Layout, c: &ChainPartition) -> Result<()> {
    if !c.covers_elements(l.order().len()) {
        return Err(Error::Input(format!(
            "chain partition covers {} of {} elements",
            c.assignment().len(),
            l.order().len()
        )));
    }
    Ok(())
}

/// All `bbb`, `abc` and `abaab` occurrences in the layout.
pub fn check_patterns(p: &Poset, l: &Layout, c: &ChainPartition) -> Result<Vec<PatternViolation>> {
    require_partition(l, c)?;
    let order = l.order();
    let ch = |v: usize| c.chain_of(v);
    let mut out = Vec::new();
    let elements = |kind, elements: Vec<usize>| PatternViolation {
        kind,
        elements,
        edges: Vec::new(),
    };

    for e in l.edges() {
        if ch(e.lower) != ch(e.upper) {
            continue;
        }
        for &b2 in &order[e.left + 1..e.right] {
            if ch(b2) == ch(e.lower) {
                out.push(elements(ViolationKind::Bbb, vec![e.lower, b2, e.upper]));
            }
        }
    }

    for (i, &a1) in order.iter().enumerate() {
        for (k, &a2) in order.iter().enumerate().skip(i + 2) {
            if ch(a1) != ch(a2) {
                continue;
            }
            for &b in &order[i + 1..k] {
                if !p.comparable(a1, b) && !p.comparable(b, a2) {
                    out.push(elements(ViolationKind::Abc, vec![a1, b, a2]));
                }
            }
        }
    }

    for outer in l.edges() {
        let (a1, b1) = (outer.lower, outer.upper);
        if ch(a1) == ch(b1) {
            continue;
        }
        for inner in l.edges() {
            let (b2, a2) = (inner.lower, inner.upper);
            if ch(b2) != ch(b1) || ch(a2) != ch(a1) || !outer.nests(inner) {
                continue;
            }
            for &a in &order[inner.left + 1..inner.right] {
                if ch(a) == ch(a1) {
                    out.push(elements(ViolationKind::Abaab, vec![a1, b2, a, a2, b1]));
                }
            }
        }
    }

    out.sort_by_cached_key(|v| (v.sort_key(l), v.kind as u8));
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RainbowConfigReport {
    pub violations: Vec<PatternViolation>,
    pub uni_colored: usize,
    pub bi_colored: usize,
}

impl RainbowConfigReport {
    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Forbidden edge combinations inside a rainbow, plus uni-/bi-coloured
/// edge counts.
pub fn check_rainbow_configs(
    l: &Layout,
    t: &Rainbow,
    c: &ChainPartition,
) -> Result<RainbowConfigReport> {
    require_partition(l, c)?;
    if !t.is_valid(l) {
        return Err(Error::Input("edges do not form a rainbow".into()));
    }
    let sig: Vec<(usize, usize)> = t
        .edges
        .iter()
        .map(|&e| {
            let e = l.edges()[e];
            (c.chain_of(e.lower), c.chain_of(e.upper))
        })
        .collect();
    let uni_colored = sig.iter().filter(|(a, b)| a == b).count();
    let mut report = RainbowConfigReport {
        violations: Vec::new(),
        uni_colored,
        bi_colored: sig.len() - uni_colored,
    };
    // Rainbow positions, reported as layout edge indices outermost first.
    let mut push = |kind, mut idx: Vec<usize>| {
        idx.sort_unstable();
        report.violations.push(PatternViolation {
            kind,
            elements: Vec::new(),
            edges: idx.into_iter().map(|i| t.edges[i]).collect(),
        });
    };
    let m = sig.len();

    for i in 0..m {
        for j in i + 1..m {
            if sig[i] == sig[j] {
                push(ViolationKind::TransitiveNest, vec![i, j]);
            }
        }
    }

    for e in 0..m {
        let (a, b) = sig[e];
        if a == b {
            continue;
        }
        for f in (0..m).filter(|&f| sig[f] == (b, a)) {
            for g in (0..m).filter(|&g| sig[g] == (a, a)) {
                push(ViolationKind::ConfigI, vec![e, f, g]);
            }
            for g in 0..m {
                let (x, cc) = sig[g];
                // b < cc so each {A→B, B→A, A→C, C→A} is reported once
                if x != a || cc == a || cc <= b {
                    continue;
                }
                for h in (0..m).filter(|&h| sig[h] == (cc, a)) {
                    push(ViolationKind::ConfigIi, vec![e, f, g, h]);
                }
            }
        }
    }

    // Rainbow edges are nested, so position order is index order.
    report.violations.sort_by(|x, y| {
        let pos = |v: &PatternViolation| v.edges.iter().map(|&e| l.edges()[e].left).min();
        pos(x).cmp(&pos(y)).then(x.edges.cmp(&y.edges))
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_r;
    use crate::layout::rainbow_number;
    use crate::order::min_chain_partition;

    /// {a1<a<a2, b2<b1, a1≺b1, b2≺a2} in the order (a1, b2, a, a2, b1).
    fn abaab_instance() -> (Poset, Layout, ChainPartition) {
        let names = ["a1", "b2", "a", "a2", "b1"];
        let p = Poset::from_relations(
            &names,
            &[
                ("a1", "a"),
                ("a", "a2"),
                ("b2", "b1"),
                ("a1", "b1"),
                ("b2", "a2"),
            ],
        )
        .unwrap();
        let l = Layout::new(&p, &[0, 1, 2, 3, 4]).unwrap();
        let c = ChainPartition::new(&p, vec![0, 1, 0, 0, 1]).unwrap();
        (p, l, c)
    }

    #[test]
    fn hand_built_abaab_is_flagged_once() {
        let (p, l, c) = abaab_instance();
        assert!(p.covers(0, 4) && p.covers(1, 3));
        let found = check_patterns(&p, &l, &c).unwrap();
        let abaab: Vec<_> = found
            .iter()
            .filter(|v| v.kind == ViolationKind::Abaab)
            .collect();
        assert_eq!(abaab.len(), 1);
        assert_eq!(abaab[0].elements, vec![0, 1, 2, 3, 4]);
        for v in &found {
            assert!(v.holds(&p, &l, &c), "{v:?}");
        }
        // a1 ∥ b2 and b2 ∥ a also break the two-dimensional sandwich property
        assert!(found.iter().any(|v| v.kind == ViolationKind::Abc));
    }

    #[test]
    fn realizer_orders_of_r3_are_clean() {
        let g = gen_r(3).unwrap();
        let p = g.poset();
        let c = min_chain_partition(&p);
        for order in [g.realizers.l1(), g.realizers.l2()] {
            let l = Layout::from_names(&p, order).unwrap();
            assert!(check_patterns(&p, &l, &c).unwrap().is_empty());
            let rep = check_rainbow_configs(&l, &rainbow_number(&l), &c).unwrap();
            assert!(rep.violations.is_empty(), "{rep:?}");
            assert!(rep.uni_colored <= 3);
        }
    }

    #[test]
    fn singleton_has_no_patterns() {
        let p = Poset::from_relations(&["x"], &[] as &[(&str, &str)]).unwrap();
        let l = Layout::new(&p, &[0]).unwrap();
        let c = min_chain_partition(&p);
        assert!(check_patterns(&p, &l, &c).unwrap().is_empty());
        let rep = check_rainbow_configs(&l, &Rainbow::default(), &c).unwrap();
        assert_eq!(rep, RainbowConfigReport::default());
    }

    #[test]
    fn bbb_witness_recheck() {
        // x ≺ z with y of the same chain between them can only come from an
        // order that is not a linear extension; the recheck still rejects it
        // on a valid layout.
        let p = Poset::from_relations(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        let l = Layout::new(&p, &[0, 1, 2]).unwrap();
        let c = min_chain_partition(&p);
        assert!(check_patterns(&p, &l, &c).unwrap().is_empty());
        let fake = PatternViolation {
            kind: ViolationKind::Bbb,
            elements: vec![0, 1, 2],
            edges: Vec::new(),
        };
        assert!(!fake.holds(&p, &l, &c));
    }

    #[test]
    fn hand_built_config_i() {
        // Chains A = {a1 < a3 < a4 < a2}, B = {b2 < b1}; covers a1≺b1, b2≺a2,
        // a3≺a4 laid out as [a1, b2, a3, a4, a2, b1], which nest as a rainbow.
        let names = ["a1", "b2", "a3", "a4", "a2", "b1"];
        let p = Poset::from_relations(
            &names,
            &[
                ("a1", "a3"),
                ("a3", "a4"),
                ("a4", "a2"),
                ("b2", "b1"),
                ("a1", "b1"),
                ("b2", "a2"),
            ],
        )
        .unwrap();
        let l = Layout::new(&p, &[0, 1, 2, 3, 4, 5]).unwrap();
        let c = ChainPartition::new(&p, vec![0, 1, 0, 0, 0, 1]).unwrap();
        let edge = |u: usize, v: usize| {
            l.edges()
                .iter()
                .position(|e| e.lower == u && e.upper == v)
                .unwrap()
        };
        let t = Rainbow {
            edges: vec![edge(0, 5), edge(1, 4), edge(2, 3)],
        };
        assert!(t.is_valid(&l));
        let rep = check_rainbow_configs(&l, &t, &c).unwrap();
        assert_eq!(rep.count(ViolationKind::ConfigI), 1);
        assert_eq!(rep.uni_colored, 1);
        assert_eq!(rep.bi_colored, 2);
        for v in &rep.violations {
            assert!(v.holds(&p, &l, &c));
        }
    }

    #[test]
    fn signature_level_config_ii_and_repeats() {
        let a_b = (0, 1);
        assert!(signature_matches(
            ViolationKind::ConfigIi,
            &[a_b, (0, 2), (2, 0), (1, 0)]
        ));
        assert!(!signature_matches(
            ViolationKind::ConfigIi,
            &[a_b, (0, 1), (1, 0), (1, 0)]
        ));
        assert!(signature_matches(
            ViolationKind::TransitiveNest,
            &[a_b, a_b]
        ));
    }

    #[test]
    fn invalid_rainbow_is_rejected() {
        let (_, l, c) = abaab_instance();
        let t = Rainbow { edges: vec![0, 0] };
        assert!(check_rainbow_configs(&l, &t, &c).is_err());
        let short = ChainPartition::new(
            &Poset::from_relations(&["x"], &[] as &[(&str, &str)]).unwrap(),
            vec![0],
        )
        .unwrap();
        assert!(check_rainbow_configs(&l, &Rainbow::default(), &short).is_err());
    }
}
