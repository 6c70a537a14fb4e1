use serde::Serialize;

use crate::error::Result;
use crate::layout::{rainbow_number, Layout};
use crate::order::{width, Poset, RealizerPair};

/// Rainbow sizes of both realizer layouts against the width bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub width: usize,
    pub rainbow_l1: usize,
    pub rainbow_l2: usize,
    /// `w(w+1)/2`
    pub realizer_bound: usize,
    /// `w^2`
    pub square_bound: usize,
    /// Both realizer layouts within `w(w+1)/2`.
    pub realizer_bound_holds: bool,
    /// The better realizer layout within `w(w+1)/2`.
    pub best_within_bound: bool,
    pub square_bound_holds: bool,
    /// Some realizer layout attains `w(w+1)/2` exactly.
    pub tight: bool,
}

pub fn realizer_bound_report(rp: &RealizerPair) -> Result<BoundReport> {
    let p = Poset::from_realizers(rp)?;
    let (w, _) = width(&p);
    let r1 = rainbow_number(&Layout::from_names(&p, rp.l1())?).len();
    let r2 = rainbow_number(&Layout::from_names(&p, rp.l2())?).len();
    let bound = w * (w + 1) / 2;
    Ok(BoundReport {
        width: w,
        rainbow_l1: r1,
        rainbow_l2: r2,
        realizer_bound: bound,
        square_bound: w * w,
        realizer_bound_holds: r1 <= bound && r2 <= bound,
        best_within_bound: r1.min(r2) <= bound,
        square_bound_holds: r1.max(r2) <= w * w,
        tight: r1 == bound || r2 == bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_r, gen_random_2d};

    #[test]
    fn r4_is_tight() {
        let rep = realizer_bound_report(&gen_r(4).unwrap().realizers).unwrap();
        assert_eq!(rep.width, 4);
        assert_eq!(rep.rainbow_l1, 10);
        assert_eq!(rep.realizer_bound, 10);
        assert!(rep.tight && rep.realizer_bound_holds && rep.square_bound_holds);
    }

    #[test]
    fn chain_report() {
        let rp = RealizerPair::new(["1", "2", "3"], ["1", "2", "3"]).unwrap();
        let rep = realizer_bound_report(&rp).unwrap();
        assert_eq!((rep.width, rep.rainbow_l1, rep.rainbow_l2), (1, 1, 1));
        assert!(rep.tight);
    }

    #[test]
    fn random_posets_respect_bounds() {
        for seed in 0..200 {
            let n = 1 + (seed as usize * 13) % 40;
            let rep = realizer_bound_report(&gen_random_2d(n, seed).unwrap().realizers).unwrap();
            assert!(
                rep.realizer_bound_holds && rep.square_bound_holds,
                "seed {seed}: {rep:?}"
            );
        }
    }
}
