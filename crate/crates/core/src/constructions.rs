//! Generators for the recursive families `R_w` and `P_w`, the two-sided
//! variant of `R_w`, and seeded random two-dimensional posets.
//!
//! Every generator returns its realizer pair. Element names are hierarchical
//! so that the copies nested inside `P_w` stay disjoint:
//!
//! * `R_w` standalone: `1 ..= w(w+1)`, with `l1` the identity.
//! * `P_w`: `p{w}/x{i}`, `p{w}/y{i}`, `p{w}/a`, `p{w}/b`, `p{w}/s`,
//!   `p{w}/t`, and the sub-posets under `p{w}/r{w-1}/`, `p{w}/p{w-1}/`,
//!   `p{w}/dualP{w-1}/`, `p{w}/dualR{w-1}/`. The base `P_2` is
//!   `p2/1 ..= p2/4`.
//! * two-sided `R_w`: `r{w}/i` below `dualR{w}/i`.
//! * random: `1 ..= n`.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{Poset, RealizerPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    R,
    P,
    RBidirectional,
    Random2d,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::R => "r",
            Family::P => "p",
            Family::RBidirectional => "r-bidirectional",
            Family::Random2d => "random2d",
        })
    }
}

/// A named block of elements inside a generated poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub label: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedFamily {
    pub family: Family,
    pub w: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub realizers: RealizerPair,
    pub naming: &'static str,
    /// Top-level blocks of the construction, empty for unstructured families.
    pub parts: Vec<Part>,
}

impl GeneratedFamily {
    pub fn poset(&self) -> Poset {
        Poset::from_realizers(&self.realizers).expect("generators emit valid realizers")
    }

    pub fn len(&self) -> usize {
        self.realizers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.realizers.is_empty()
    }

    pub fn part(&self, label: &str) -> Option<&Part> {
        self.parts.iter().find(|p| p.label == label)
    }
}

fn check_disjoint<T: Eq + Hash + fmt::Display>(a: &[T], b: &[T]) -> Result<()> {
    let mut seen: HashSet<&T> = HashSet::with_capacity(a.len() + b.len());
    for x in a.iter().chain(b) {
        if !seen.insert(x) {
            return Err(Error::DuplicateElement(x.to_string()));
        }
    }
    Ok(())
}

/// `a` followed by `b`; the two must share no element.
pub fn concat<T: Clone + Eq + Hash + fmt::Display>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    check_disjoint(a, b)?;
    Ok(a.iter().chain(b).cloned().collect())
}

/// `(a1, b1, a2, b2, ...)` for equal-length, disjoint `a` and `b`.
pub fn interleave<T: Clone + Eq + Hash + fmt::Display>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    if a.len() != b.len() {
        return Err(Error::Arity {
            left: a.len(),
            right: b.len(),
        });
    }
    check_disjoint(a, b)?;
    Ok(a.iter()
        .zip(b)
        .flat_map(|(x, y)| [x.clone(), y.clone()])
        .collect())
}

fn concat_all(parts: &[&[String]]) -> Result<Vec<String>> {
    parts
        .iter()
        .try_fold(Vec::new(), |acc, part| concat(&acc, part))
}

fn r_numbers(w: usize) -> (Vec<usize>, Vec<usize>) {
    if w == 1 {
        return (vec![1, 2], vec![1, 2]);
    }
    let (prev, prev2) = r_numbers(w - 1);
    let n = prev.len();
    let mut l2: Vec<usize> = prev2.iter().map(|x| x + w).collect();
    for i in 1..=w {
        l2.push(i);
        l2.push(n + 2 * w + 1 - i);
    }
    ((1..=n + 2 * w).collect(), l2)
}

fn r_named(w: usize, prefix: &str) -> RealizerPair {
    let (l1, l2) = r_numbers(w);
    let name = |x: &usize| format!("{prefix}{x}");
    RealizerPair::new(l1.iter().map(name), l2.iter().map(name)).expect("R_w realizers are valid")
}

fn positive(w: usize, min: usize, what: &str) -> Result<()> {
    if w < min {
        return Err(Error::Parameter(format!(
            "{what} requires w >= {min}, got {w}"
        )));
    }
    Ok(())
}

/// `R_w`: `w(w+1)` elements, width `w`, and its `l1` layout contains a
/// rainbow of size `w(w+1)/2`.
pub fn gen_r(w: usize) -> Result<GeneratedFamily> {
    positive(w, 1, "R_w")?;
    Ok(GeneratedFamily {
        family: Family::R,
        w: Some(w),
        n: None,
        seed: None,
        realizers: r_named(w, ""),
        naming: "elements 1..=w(w+1); l1 is the identity",
        parts: Vec::new(),
    })
}

/// `R_w` below a disjoint copy of its dual, with the copy's realizers
/// crossed so that both combined realizers carry an `R_w`-sized rainbow.
pub fn gen_r_bidirectional(w: usize) -> Result<GeneratedFamily> {
    positive(w, 1, "two-sided R_w")?;
    let lower = r_named(w, &format!("r{w}/"));
    let upper = r_named(w, &format!("dualR{w}/"));
    let rev = |s: &[String]| s.iter().rev().cloned().collect::<Vec<_>>();
    let l1 = concat(lower.l1(), &rev(upper.l2()))?;
    let l2 = concat(lower.l2(), &rev(upper.l1()))?;
    Ok(GeneratedFamily {
        family: Family::RBidirectional,
        w: Some(w),
        n: None,
        seed: None,
        realizers: RealizerPair::new(l1, l2)?,
        naming: "r{w}/i for R_w, dualR{w}/i for the dual copy stacked above it",
        parts: vec![
            Part {
                label: "R".into(),
                elements: lower.l1().to_vec(),
            },
            Part {
                label: "dualR".into(),
                elements: upper.l1().to_vec(),
            },
        ],
    })
}

struct PBuild {
    realizers: RealizerPair,
    parts: Vec<Part>,
}

fn p_named(w: usize, prefix: &str) -> Result<PBuild> {
    if w == 2 {
        let name = |x: &&str| format!("{prefix}{x}");
        return Ok(PBuild {
            realizers: RealizerPair::new(
                ["1", "2", "3", "4"].iter().map(name),
                ["2", "1", "4", "3"].iter().map(name),
            )?,
            parts: Vec::new(),
        });
    }
    let k = w - 1;
    let r_sub = r_named(k, &format!("{prefix}r{k}/"));
    let p_sub = p_named(k, &format!("{prefix}p{k}/"))?.realizers;
    // Reversed and swapped: the copies then mirror their originals under duality.
    let dualize = |rp: RealizerPair| rp.reversed().swapped();
    let p_dual = dualize(p_named(k, &format!("{prefix}dualP{k}/"))?.realizers);
    let r_dual = dualize(r_named(k, &format!("{prefix}dualR{k}/")));
    let r = r_sub.len();

    let x: Vec<String> = (1..=r + 1).map(|i| format!("{prefix}x{i}")).collect();
    let y: Vec<String> = (1..=r + 1).map(|i| format!("{prefix}y{i}")).collect();
    let single = |s: &str| vec![format!("{prefix}{s}")];
    let (a, b, s, t) = (single("a"), single("b"), single("s"), single("t"));

    let l1 = concat_all(&[
        &x,
        &b,
        &s,
        &y[..1],
        &interleave(r_sub.l1(), &y[1..])?,
        p_sub.l1(),
        &a,
        p_dual.l1(),
        r_dual.l1(),
        &t,
    ])?;
    let l2 = concat_all(&[
        &s,
        r_sub.l2(),
        p_sub.l2(),
        &a,
        p_dual.l2(),
        &interleave(&x[..r], r_dual.l2())?,
        &x[r..],
        &t,
        &b,
        &y,
    ])?;

    let part = |label: &str, elements: Vec<String>| Part {
        label: label.to_owned(),
        elements,
    };
    Ok(PBuild {
        realizers: RealizerPair::new(l1, l2)?,
        parts: vec![
            part("x", x),
            part("y", y),
            part("s", s),
            part("t", t),
            part("a", a),
            part("b", b),
            part("R", r_sub.l1().to_vec()),
            part("P", p_sub.l1().to_vec()),
            part("dualP", p_dual.l1().to_vec()),
            part("dualR", r_dual.l1().to_vec()),
        ],
    })
}

/// `P_w`, the self-dual width-`w` poset built from copies of `P_{w-1}`,
/// `R_{w-1}`, their duals and the extra elements `x_i, y_i, a, b, s, t`.
pub fn gen_p(w: usize) -> Result<GeneratedFamily> {
    positive(w, 2, "P_w")?;
    let built = p_named(w, &format!("p{w}/"))?;
    Ok(GeneratedFamily {
        family: Family::P,
        w: Some(w),
        n: None,
        seed: None,
        realizers: built.realizers,
        naming: "p{w}/{x_i,y_i,a,b,s,t} plus sub-posets under p{w}/r{w-1}/, p{w}/p{w-1}/, \
                 p{w}/dualP{w-1}/, p{w}/dualR{w-1}/; P_2 is p2/1..p2/4",
        parts: built.parts,
    })
}

/// Expected `|P_w|`: 4 for `w = 2`, else `2|P_{w-1}| + 4w^2 - 4w + 6`.
pub fn p_size(w: usize) -> usize {
    if w <= 2 {
        4
    } else {
        2 * p_size(w - 1) + 4 * w * w - 4 * w + 6
    }
}

/// Seeded permutation of `0..n`.
///
/// The stream is ChaCha8 seeded through `SeedableRng::seed_from_u64`. The
/// shuffle is Fisher-Yates from the back: for `i = n-1` down to `1`, swap
/// position `i` with `next_u64() % (i + 1)`.
pub fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}

/// Random two-dimensional poset: `l1` is the identity over `1..=n`, `l2`
/// a [`seeded_permutation`] of it.
pub fn gen_random_2d(n: usize, seed: u64) -> Result<GeneratedFamily> {
    if n == 0 {
        return Err(Error::Parameter("random poset needs n >= 1".into()));
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let l2 = seeded_permutation(n, seed)
        .into_iter()
        .map(|i| names[i].clone())
        .collect::<Vec<_>>();
    Ok(GeneratedFamily {
        family: Family::Random2d,
        w: None,
        n: Some(n),
        seed: Some(seed),
        realizers: RealizerPair::new(names, l2)?,
        naming: "elements 1..=n; l1 is the identity",
        parts: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::width;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&[1, 2], &[3]).unwrap(), vec![1, 2, 3]);
        assert_eq!(concat(&[], &["x"]).unwrap(), vec!["x"]);
        assert_eq!(
            concat(&[3, 4], &[1, 6, 2, 5]).unwrap(),
            vec![3, 4, 1, 6, 2, 5]
        );
        assert!(matches!(
            concat(&[1, 2], &[2]),
            Err(Error::DuplicateElement(_))
        ));
    }

    #[test]
    fn interleave_examples() {
        assert_eq!(interleave(&["x1"], &["y1"]).unwrap(), vec!["x1", "y1"]);
        assert_eq!(
            interleave(&["x1", "x2"], &["y1", "y2"]).unwrap(),
            vec!["x1", "y1", "x2", "y2"]
        );
        assert!(matches!(
            interleave(&[1, 2], &[3]),
            Err(Error::Arity { left: 2, right: 1 })
        ));
    }

    #[test]
    fn r_small_cases() {
        let r1 = gen_r(1).unwrap();
        assert_eq!(r1.len(), 2);
        assert_eq!(r1.poset().relation_count(), 1);

        let r2 = gen_r(2).unwrap();
        assert_eq!(r2.realizers.l1(), strs(&["1", "2", "3", "4", "5", "6"]));
        assert_eq!(r2.realizers.l2(), strs(&["3", "4", "1", "6", "2", "5"]));

        assert_eq!(gen_r(3).unwrap().len(), 12);
        assert!(matches!(gen_r(0), Err(Error::Parameter(_))));
    }

    #[test]
    fn r_sizes_and_widths() {
        for w in 1..=6 {
            let r = gen_r(w).unwrap();
            assert_eq!(r.len(), w * (w + 1));
            assert_eq!(width(&r.poset()).0, w);
        }
    }

    #[test]
    fn p_base_and_sizes() {
        let p2 = gen_p(2).unwrap();
        assert_eq!(p2.realizers.l2(), strs(&["p2/2", "p2/1", "p2/4", "p2/3"]));
        let p3 = gen_p(3).unwrap();
        assert_eq!(p3.len(), 38);
        assert_eq!(gen_p(4).unwrap().len(), 130);
        for w in 2..=5 {
            assert_eq!(gen_p(w).unwrap().len(), p_size(w));
        }
        assert!(matches!(gen_p(1), Err(Error::Parameter(_))));
    }

    #[test]
    fn p_widths() {
        for w in 2..=5 {
            assert_eq!(width(&gen_p(w).unwrap().poset()).0, w, "w = {w}");
        }
    }

    #[test]
    fn p_parts_cover_everything_once() {
        let p = gen_p(4).unwrap();
        let mut all: Vec<&String> = p.parts.iter().flat_map(|part| &part.elements).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), p.len());
        assert_eq!(p.part("a").unwrap().elements, vec!["p4/a".to_string()]);
        assert_eq!(p.part("x").unwrap().elements.len(), 13);
        assert_eq!(p.part("P").unwrap().elements.len(), 38);
    }

    #[test]
    fn bidirectional_sizes() {
        for w in 1..=4 {
            let q = gen_r_bidirectional(w).unwrap();
            assert_eq!(q.len(), 2 * w * (w + 1));
            assert_eq!(width(&q.poset()).0, w);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random_2d(5, 1).unwrap();
        let b = gen_random_2d(5, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(
            gen_random_2d(20, 1).unwrap().realizers,
            gen_random_2d(20, 2).unwrap().realizers
        );
        let one = gen_random_2d(1, 99).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.poset().relation_count(), 0);
        assert!(gen_random_2d(0, 1).is_err());
    }

    #[test]
    fn random_corpus_is_well_formed() {
        for seed in 0..100 {
            let g = gen_random_2d(20, seed).unwrap();
            let p = g.poset();
            for (u, v) in p.relations() {
                assert!(!p.lt(v, u));
                for z in p.above(v).ones() {
                    assert!(p.lt(u, z));
                }
            }
            let l2 = p.indices_of(g.realizers.l2()).unwrap();
            assert!(p.is_linear_extension(&(0..20).collect::<Vec<_>>()).unwrap());
            assert!(p.is_linear_extension(&l2).unwrap());
        }
    }
}
