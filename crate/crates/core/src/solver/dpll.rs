//! A deliberately small DPLL solver for self-tests on tiny encodings.
//! Real instances go to an external solver through DIMACS files.

/// A satisfying assignment as literals `±1..=±vars`, or `None` if the
/// clauses are unsatisfiable.
pub fn solve(vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<i32>> {
    let mut assign = vec![0i8; vars + 1];
    let mut trail = Vec::new();
    if search(clauses, &mut assign, &mut trail) {
        Some(
            (1..=vars as i32)
                .map(|v| if assign[v as usize] > 0 { v } else { -v })
                .collect(),
        )
    } else {
        None
    }
}

fn value(assign: &[i8], lit: i32) -> i8 {
    let v = assign[lit.unsigned_abs() as usize];
    if lit > 0 {
        v
    } else {
        -v
    }
}

fn set(assign: &mut [i8], trail: &mut Vec<usize>, lit: i32) {
    let var = lit.unsigned_abs() as usize;
    assign[var] = if lit > 0 { 1 } else { -1 };
    trail.push(var);
}

enum Propagation {
    Conflict,
    /// Every clause satisfied.
    Done,
    /// Literal to branch on.
    Open(i32),
}

fn propagate(clauses: &[Vec<i32>], assign: &mut [i8], trail: &mut Vec<usize>) -> Propagation {
    loop {
        let mut changed = false;
        let mut branch: Option<(usize, i32)> = None;
        for clause in clauses {
            let mut open = 0;
            let mut last = 0;
            let mut sat = false;
            for &lit in clause {
                match value(assign, lit) {
                    1 => {
                        sat = true;
                        break;
                    }
                    0 => {
                        open += 1;
                        last = lit;
                    }
                    _ => {}
                }
            }
            if sat {
                continue;
            }
            match open {
                0 => return Propagation::Conflict,
                1 => {
                    set(assign, trail, last);
                    changed = true;
                }
                _ => {
                    if branch.is_none_or(|(size, _)| open < size) {
                        branch = Some((open, last));
                    }
                }
            }
        }
        if !changed {
            return match branch {
                Some((_, lit)) => Propagation::Open(lit),
                None => Propagation::Done,
            };
        }
    }
}

fn search(clauses: &[Vec<i32>], assign: &mut [i8], trail: &mut Vec<usize>) -> bool {
    let mark = trail.len();
    let lit = match propagate(clauses, assign, trail) {
        Propagation::Done => return true,
        Propagation::Conflict => {
            undo(assign, trail, mark);
            return false;
        }
        Propagation::Open(lit) => lit,
    };
    for choice in [lit, -lit] {
        let inner = trail.len();
        set(assign, trail, choice);
        if search(clauses, assign, trail) {
            return true;
        }
        undo(assign, trail, inner);
    }
    undo(assign, trail, mark);
    false
}

fn undo(assign: &mut [i8], trail: &mut Vec<usize>, mark: usize) {
    for var in trail.drain(mark..) {
        assign[var] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn satisfies(model: &[i32], clauses: &[Vec<i32>]) -> bool {
        clauses
            .iter()
            .all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == l))
    }

    #[test]
    fn small_formulas() {
        let f = vec![vec![1, 2], vec![-1, 2], vec![1, -2]];
        let m = solve(2, &f).unwrap();
        assert_eq!(m, vec![1, 2]);
        let g = vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]];
        assert!(solve(2, &g).is_none());
        assert!(solve(0, &[vec![]]).is_none());
        assert_eq!(solve(3, &[]).unwrap().len(), 3);
    }

    #[test]
    fn matches_truth_table_on_random_3cnf() {
        use rand_chacha::ChaCha8Rng;
        use rand_core::{RngCore, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let vars = 1 + (rng.next_u32() % 8) as usize;
            let clauses: Vec<Vec<i32>> = (0..rng.next_u32() % 30)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = 1 + (rng.next_u32() as usize % vars) as i32;
                            if rng.next_u32() % 2 == 0 {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect()
                })
                .collect();
            let brute = (0u32..1 << vars).any(|mask| {
                let m: Vec<i32> = (1..=vars as i32)
                    .map(|v| if mask >> (v - 1) & 1 == 1 { v } else { -v })
                    .collect();
                satisfies(&m, &clauses)
            });
            match solve(vars, &clauses) {
                Some(m) => assert!(brute && satisfies(&m, &clauses)),
                None => assert!(!brute),
            }
        }
    }
}
