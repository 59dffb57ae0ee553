use proptest::prelude::*;

use bindsig_core::colimit::sample::{random_chain, random_cocone, random_diagram, random_pointwise, random_reindex};
use bindsig_core::colimit::{
    check_constant_preservation, check_coproduct_preservation, check_identity_preservation,
    check_left_adjoint_preservation, check_pointwise, check_precomposition_preservation, check_product_cocont,
    colimit, count_factorizations, eq_closure_oracle, is_colimiting, pointwise_colimit, universal_map, DisjointSet,
    FinSetObj,
};
use bindsig_core::random::rng;

#[test]
fn union_find_agrees_with_closure_oracle() {
    let mut r = rng(42);
    for _ in 0..1000 {
        let d = random_diagram(&mut r, 5, 8, 6);
        let total = d.offsets().1;
        assert_eq!(colimit(&d).partition(), eq_closure_oracle(total, &d.generating_pairs()), "{:?}", d.to_json());
    }
}

#[test]
fn universal_maps_factor_uniquely() {
    let mut r = rng(7);
    let mut exhaustive = 0;
    for _ in 0..1000 {
        let d = random_diagram(&mut r, 5, 8, 6);
        let col = colimit(&d);
        let c = random_cocone(&mut r, &col, 2);
        let h = universal_map(&col, &c).unwrap();
        for (leg, other) in col.legs().iter().zip(&c.legs) {
            assert_eq!(&leg.then(&h), other);
        }
        assert_eq!(is_colimiting(&d, &c).unwrap(), h.is_bijective());
        if let Some(n) = count_factorizations(&col, &c, 10_000) {
            assert_eq!(n, 1);
            exhaustive += 1;
        }
    }
    assert!(exhaustive > 500, "only {exhaustive} exhaustive checks");
}

#[test]
fn preservation_harnesses() {
    let mut r = rng(11);
    for _ in 0..200 {
        let len = 1 + (rand::Rng::gen_range(&mut r, 0..5));
        let a = random_chain(&mut r, len, 4);
        let b = random_chain(&mut r, len, 4);
        assert!(check_product_cocont(&a, &b).unwrap());
        assert!(check_constant_preservation(FinSetObj::new(rand::Rng::gen_range(&mut r, 0..4)), &a).unwrap());
        assert!(check_identity_preservation(&a).unwrap());

        let d = random_diagram(&mut r, 5, 8, 6);
        assert!(check_left_adjoint_preservation(FinSetObj::new(rand::Rng::gen_range(&mut r, 0..4)), &d).unwrap());

        let pd = random_pointwise(&mut r, 4, 6, 4);
        let pc = pointwise_colimit(&pd).unwrap();
        assert!(check_pointwise(&pd, &pc));
        let reindex = random_reindex(&mut r, &pd.positions);
        assert!(check_precomposition_preservation(&reindex, &pd).unwrap());
        let other = pd.diagrams.last().unwrap();
        assert!(check_coproduct_preservation(&pd.diagrams[0], other).unwrap());
    }
}

proptest! {
    #[test]
    fn disjoint_set_matches_oracle(n in 1..20usize, pairs in proptest::collection::vec((0..20usize, 0..20usize), 0..30)) {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let mut ds = DisjointSet::new(n);
        for &(a, b) in &pairs {
            ds.union(a, b);
        }
        let oracle = eq_closure_oracle(n, &pairs);
        for class in &oracle {
            let root = ds.find(class[0]);
            prop_assert!(class.iter().all(|&x| ds.find(x) == root));
        }
        let mut roots: Vec<usize> = (0..n).map(|x| ds.find(x)).collect();
        roots.sort();
        roots.dedup();
        prop_assert_eq!(roots.len(), oracle.len());
    }
}
