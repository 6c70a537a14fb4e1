//! The CNF encoding, solved by the bundled DPLL, agrees with branch and
//! bound on small random posets.

use qlayout::constructions::{gen_p, gen_r, gen_random_2d};
use qlayout::solver::{
    decode_model, dpll, encode_cnf, exact_qn_bnb, parse_dimacs, BnbOptions, Model,
};
use qlayout::Poset;

fn sat_at(p: &Poset, k: usize) -> bool {
    let cnf = encode_cnf(p, k).unwrap();
    match dpll::solve(cnf.var_count(), cnf.clauses()) {
        Some(lits) => {
            let model = Model::from_literals(lits).unwrap();
            let d = decode_model(&cnf, &model).unwrap();
            d.assignment.validate(&d.layout).unwrap();
            assert!(d.assignment.k <= k);
            true
        }
        None => false,
    }
}

#[test]
fn random_small_posets() {
    for seed in 0..40u64 {
        let n = 2 + (seed as usize % 7);
        let p = gen_random_2d(n, seed).unwrap().poset();
        let qn = exact_qn_bnb(&p, &BnbOptions::default()).unwrap().qn;
        if p.cover_graph().edges.is_empty() {
            assert_eq!(qn, 0);
            continue;
        }
        assert!(sat_at(&p, qn), "seed {seed}: k = qn should be SAT");
        if qn > 1 {
            assert!(
                !sat_at(&p, qn - 1),
                "seed {seed}: k = qn - 1 should be UNSAT"
            );
        }
    }
}

#[test]
fn named_families() {
    let p2 = gen_p(2).unwrap().poset();
    assert!(sat_at(&p2, 2));
    assert!(!sat_at(&p2, 1));
    let r2 = gen_r(2).unwrap().poset();
    assert!(sat_at(&r2, 1));
}

#[test]
fn dimacs_text_round_trip() {
    let p = gen_r(2).unwrap().poset();
    let cnf = encode_cnf(&p, 2).unwrap();
    let (vars, clauses) = parse_dimacs(&cnf.to_dimacs()).unwrap();
    assert_eq!(vars, cnf.var_count());
    assert_eq!(clauses, cnf.clauses());
}

#[test]
fn competition_model_format() {
    let p = gen_p(2).unwrap().poset();
    let cnf = encode_cnf(&p, 2).unwrap();
    let lits = dpll::solve(cnf.var_count(), cnf.clauses()).unwrap();
    let body: Vec<String> = lits.iter().map(i32::to_string).collect();
    let text = format!(
        "c solver output\ns SATISFIABLE\nv {}\nv 0\n",
        body.join(" ")
    );
    let d = decode_model(&cnf, &Model::parse(&text).unwrap()).unwrap();
    assert_eq!(d.layout.edge_count(), 4);
    assert!(matches!(
        Model::parse("s UNSATISFIABLE\n"),
        Err(qlayout::Error::Unsatisfiable)
    ));
}
