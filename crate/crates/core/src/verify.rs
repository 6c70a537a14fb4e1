//! Reproducible checks of the structural claims, one verdict per instance.
//!
//! Random corpora are fixed by `(n_max, seeds)`: instance `s` is
//! `gen_random_2d(n_max - s % n_max, s)`, so sizes cycle downward through
//! `n_max ..= 1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::constructions::{gen_p, gen_r, gen_random_2d, GeneratedFamily};
use crate::error::{Error, Result};
use crate::layout::{
    check_patterns, check_rainbow_configs, rainbow_number, realizer_bound_report, Layout,
};
use crate::order::{isomorphic, min_chain_partition, width, IsoOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    LemmaRainbow,
    Thm2Bound,
    Props,
    PwSelfdual,
    HpSquare,
}

impl Claim {
    pub const ALL: [Claim; 5] = [
        Claim::LemmaRainbow,
        Claim::Thm2Bound,
        Claim::Props,
        Claim::PwSelfdual,
        Claim::HpSquare,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Claim::LemmaRainbow => "lemma-rainbow",
            Claim::Thm2Bound => "thm2-bound",
            Claim::Props => "props",
            Claim::PwSelfdual => "pw-selfdual",
            Claim::HpSquare => "hp-square",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown claim `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub n_max: usize,
    pub seeds: u64,
}

impl CorpusSpec {
    pub fn instances(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        (0..self.seeds).map(|s| (self.n_max - (s % self.n_max as u64) as usize, s))
    }

    pub fn families(&self) -> impl Iterator<Item = Result<GeneratedFamily>> + '_ {
        self.instances().map(|(n, s)| gen_random_2d(n, s))
    }

    fn check(&self) -> Result<()> {
        if self.n_max == 0 || self.seeds == 0 {
            return Err(Error::Parameter(
                "corpus needs n >= 1 and seeds >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub claim: Claim,
    pub verdicts: Vec<Verdict>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.pass).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} instances, {} failed)",
            self.claim,
            if self.passed() { "PASS" } else { "FAIL" },
            self.verdicts.len(),
            self.failures()
        )
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            let mark = if v.pass { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {:<24} {}", v.instance, v.detail)?;
        }
        write!(f, "{}", self.summary())
    }
}

fn instance_label(g: &GeneratedFamily) -> String {
    format!("random2d n={} seed={}", g.len(), g.seed.unwrap_or_default())
}

/// `R_w` under `l1` has rainbow number exactly `w(w+1)/2`.
pub fn verify_lemma_rainbow(w_max: usize) -> Result<VerifyReport> {
    let mut verdicts = Vec::new();
    for w in 1..=w_max {
        let g = gen_r(w)?;
        let p = g.poset();
        let r = rainbow_number(&Layout::from_names(&p, g.realizers.l1())?).len();
        let want = w * (w + 1) / 2;
        verdicts.push(Verdict {
            instance: format!("R_{w}"),
            pass: r == want,
            detail: format!("rainbow {r}, expected {want}"),
        });
    }
    Ok(VerifyReport {
        claim: Claim::LemmaRainbow,
        verdicts,
    })
}

/// Both realizer layouts have rainbow number at most `w(w+1)/2`.
pub fn verify_thm2_bound(spec: &CorpusSpec) -> Result<VerifyReport> {
    spec.check()?;
    let mut verdicts = Vec::new();
    for g in spec.families() {
        let g = g?;
        let rep = realizer_bound_report(&g.realizers)?;
        verdicts.push(Verdict {
            instance: instance_label(&g),
            pass: rep.realizer_bound_holds,
            detail: format!(
                "w {}, rainbows {}/{}, bound {}",
                rep.width, rep.rainbow_l1, rep.rainbow_l2, rep.realizer_bound
            ),
        });
    }
    Ok(VerifyReport {
        claim: Claim::Thm2Bound,
        verdicts,
    })
}

/// Both realizer layouts have rainbow number at most `w^2`.
pub fn verify_hp_square(spec: &CorpusSpec) -> Result<VerifyReport> {
    spec.check()?;
    let mut verdicts = Vec::new();
    for g in spec.families() {
        let g = g?;
        let rep = realizer_bound_report(&g.realizers)?;
        verdicts.push(Verdict {
            instance: instance_label(&g),
            pass: rep.square_bound_holds,
            detail: format!(
                "w {}, rainbows {}/{}, bound {}",
                rep.width, rep.rainbow_l1, rep.rainbow_l2, rep.square_bound
            ),
        });
    }
    Ok(VerifyReport {
        claim: Claim::HpSquare,
        verdicts,
    })
}

/// Realizer layouts avoid the forbidden patterns, and their maximum
/// rainbows avoid the forbidden configurations with at most `w`
/// uni-coloured edges.
pub fn verify_props(spec: &CorpusSpec) -> Result<VerifyReport> {
    spec.check()?;
    let mut verdicts = Vec::new();
    for g in spec.families() {
        let g = g?;
        let p = g.poset();
        let c = min_chain_partition(&p);
        let w = c.count();
        let mut pass = true;
        let mut parts = Vec::new();
        for (tag, order) in [("l1", g.realizers.l1()), ("l2", g.realizers.l2())] {
            let l = Layout::from_names(&p, order)?;
            let patterns = check_patterns(&p, &l, &c)?;
            let t = rainbow_number(&l);
            let cfg = check_rainbow_configs(&l, &t, &c)?;
            pass &= patterns.is_empty() && cfg.violations.is_empty() && cfg.uni_colored <= w;
            parts.push(format!(
                "{tag}: {} patterns, rainbow {} with {} config violations, {} uni-coloured",
                patterns.len(),
                t.len(),
                cfg.violations.len(),
                cfg.uni_colored
            ));
        }
        verdicts.push(Verdict {
            instance: instance_label(&g),
            pass,
            detail: format!("w {w}; {}", parts.join("; ")),
        });
    }
    Ok(VerifyReport {
        claim: Claim::Props,
        verdicts,
    })
}

/// `P_w` is isomorphic to its dual with `a` and `b` fixed (for `w >= 3`;
/// `P_2` has no such elements and is checked unconstrained).
pub fn verify_pw_selfdual(w_max: usize) -> Result<VerifyReport> {
    let mut verdicts = Vec::new();
    for w in 2..=w_max {
        let g = gen_p(w)?;
        let p = g.poset();
        let d = p.dual();
        let mut opts = IsoOptions::default().with_max_elements(p.len());
        let fixed = if w >= 3 {
            let a = p.index_of(&format!("p{w}/a"))?;
            let b = p.index_of(&format!("p{w}/b"))?;
            opts = opts.fixing(a, a).fixing(b, b);
            vec![p.name(a).to_string(), p.name(b).to_string()]
        } else {
            Vec::new()
        };
        let (wd, _) = width(&p);
        let iso = isomorphic(&p, &d, &opts)?;
        let detail = match (&iso, fixed.is_empty()) {
            (Some(_), false) => format!(
                "{} elements, width {wd}, self-dual with fixed points {}",
                p.len(),
                fixed.join(", ")
            ),
            (Some(_), true) => format!("{} elements, width {wd}, self-dual", p.len()),
            (None, _) => format!(
                "{} elements, width {wd}, no isomorphism to the dual",
                p.len()
            ),
        };
        verdicts.push(Verdict {
            instance: format!("P_{w}"),
            pass: iso.is_some() && wd == w,
            detail,
        });
    }
    Ok(VerifyReport {
        claim: Claim::PwSelfdual,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_tags_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.tag().parse::<Claim>().unwrap(), c);
        }
        assert!("thm3".parse::<Claim>().is_err());
    }

    #[test]
    fn corpus_sizes_cycle() {
        let spec = CorpusSpec { n_max: 3, seeds: 5 };
        let sizes: Vec<usize> = spec.instances().map(|(n, _)| n).collect();
        assert_eq!(sizes, vec![3, 2, 1, 3, 2]);
    }

    #[test]
    fn lemma_small() {
        let rep = verify_lemma_rainbow(4).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.verdicts.len(), 4);
    }

    #[test]
    fn selfdual_small() {
        let rep = verify_pw_selfdual(3).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.verdicts[1].detail.contains("p3/a, p3/b"));
    }

    #[test]
    fn corpus_claims_small() {
        let spec = CorpusSpec {
            n_max: 12,
            seeds: 24,
        };
        for rep in [
            verify_thm2_bound(&spec).unwrap(),
            verify_props(&spec).unwrap(),
            verify_hp_square(&spec).unwrap(),
        ] {
            assert!(rep.passed(), "{rep}");
            assert_eq!(rep.verdicts.len(), 24);
        }
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(verify_thm2_bound(&CorpusSpec { n_max: 0, seeds: 3 }).is_err());
    }
}
