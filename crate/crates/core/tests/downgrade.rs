mod common;

use common::{conifold, diagonal_subtorus, random_subtorus_pairs, random_weight, rng, v};
use gitkit::downgrade::Downgrade;
use gitkit::{Cone, IntVector};
use num_bigint::BigInt;

#[test]
fn image_of_weight_cone_is_the_subtorus_weight_cone() {
    let mut r = rng(30);
    for (t, s) in random_subtorus_pairs(31, 50) {
        let d = Downgrade::new(&t, &s).unwrap();
        let omega = d.weight_cone();
        // (σ ∩ N'_Q)∨, with σ ∩ N'_Q pulled back to N' coordinates
        let e = s.embedding();
        let pull = |rows: &[IntVector]| -> Vec<IntVector> { rows.iter().map(|f| e.transpose().mul_vec(f)).collect() };
        let restricted = Cone::from_inequalities(s.sub_rank(), &pull(t.sigma().facets()), &pull(t.sigma().equations())).unwrap();
        assert_eq!(restricted.dual(), omega, "{} along {:?}", t.sigma(), e);
        for _ in 0..10 {
            let u = random_weight(&mut r, &t, 20);
            assert!(omega.contains_int(&s.restrict(&u)));
        }
    }
}

#[test]
fn downgraded_tables_are_order_reversing() {
    for (t, s) in random_subtorus_pairs(32, 20) {
        let d = Downgrade::new(&t, &s).unwrap();
        let fan = d.git_fan().unwrap();
        assert!(fan.check_correspondence().holds(), "{} along {:?}", t.sigma(), s.embedding());
        for row in &fan.rows {
            assert!(row.union_agrees);
            assert!(row.intersection_agrees);
        }
    }
}

#[test]
fn union_terms_come_from_subset_sums() {
    let mut pairs = random_subtorus_pairs(33, 10);
    pairs.push((conifold(), diagonal_subtorus()));
    for (t, s) in &pairs {
        let Ok(poset) = t.subset_sum_poset() else { continue };
        let d = Downgrade::new(t, s).unwrap();
        for row in d.git_fan().unwrap().rows {
            for term in &row.union {
                let mask = term.subset.iter().fold(0usize, |m, &i| m | 1 << i);
                assert_eq!(poset.locus(mask), &term.locus);
            }
        }
    }
}

#[test]
fn loci_are_constant_along_rays() {
    let mut r = rng(34);
    let mut pairs = random_subtorus_pairs(35, 15);
    pairs.push((conifold(), diagonal_subtorus()));
    for (t, s) in &pairs {
        let d = Downgrade::new(t, s).unwrap();
        for _ in 0..5 {
            let w = s.restrict(&random_weight(&mut r, t, 4));
            let locus = d.semistable_locus(&w).unwrap();
            for n in [2, 3, 5] {
                assert_eq!(d.semistable_locus(&w.scale(&BigInt::from(n))).unwrap(), locus);
            }
        }
    }
}

#[test]
fn example_table() {
    let t = conifold();
    let s = diagonal_subtorus();
    let d = Downgrade::new(&t, &s).unwrap();
    assert_eq!(d.weight_cone(), common::cone(2, &[&[1, 0], &[0, 1]]));
    let fan = d.git_fan().unwrap();
    let cones: Vec<Cone> = fan.rows.iter().map(|r| r.cone.clone()).collect();
    assert_eq!(
        cones,
        vec![
            common::cone(2, &[]),
            common::cone(2, &[&[0, 1]]),
            common::cone(2, &[&[1, 0]]),
            common::cone(2, &[&[1, 0], &[0, 1]]),
        ]
    );
    assert_eq!(d.git_cone(&v(&[3, 1])).unwrap(), cones[3]);
}
