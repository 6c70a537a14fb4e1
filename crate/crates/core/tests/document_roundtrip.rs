use proptest::prelude::*;

use qlayout::constructions::{gen_p, gen_r, gen_r_bidirectional, gen_random_2d};
use qlayout::io::PosetDocument;

#[test]
fn generated_families_round_trip() {
    let families = [
        gen_r(1).unwrap(),
        gen_r(5).unwrap(),
        gen_p(2).unwrap(),
        gen_p(4).unwrap(),
        gen_r_bidirectional(3).unwrap(),
    ];
    for g in &families {
        let doc = PosetDocument::from_family(g);
        assert_eq!(PosetDocument::parse(&doc.to_json()).unwrap(), doc);
    }
}

proptest! {
    #[test]
    fn random_realizer_documents(n in 1usize..30, seed in any::<u64>()) {
        let g = gen_random_2d(n, seed).unwrap();
        let doc = PosetDocument::from_family(&g);
        let back = PosetDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.poset().unwrap().relation_count(), g.poset().relation_count());
    }

    #[test]
    fn relations_body_preserves_order(n in 1usize..25, seed in any::<u64>()) {
        let p = gen_random_2d(n, seed).unwrap().poset();
        let doc = PosetDocument::from_poset(&p);
        let back = PosetDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let q = back.poset().unwrap();
        prop_assert_eq!(q.names(), p.names());
        let a: Vec<_> = q.relations().collect();
        let b: Vec<_> = p.relations().collect();
        prop_assert_eq!(a, b);
    }
}
