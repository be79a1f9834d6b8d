mod common;

use std::collections::BTreeMap;

use common::{conifold, diagonal_subtorus, random_cone, random_effective_downgrades, rng};
use gitkit::downgrade::Downgrade;
use gitkit::ppdiv::{downgrade_ppdivisor, minkowski_sum, verify_reconstruction};
use gitkit::{Cone, IntMatrix, IntVector, PolyhedralDivisor, RatVector, SubtorusData, TailedPolyhedron, ToricBase};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

fn random_rational(r: &mut impl Rng, n: usize) -> RatVector {
    RatVector::new(
        (0..n)
            .map(|_| BigRational::new(r.gen_range(-6..=6).into(), r.gen_range(1..=3).into()))
            .collect(),
    )
}

fn random_polyhedron(r: &mut impl Rng, tail: &Cone) -> TailedPolyhedron {
    let k = r.gen_range(1..=4);
    let vertices = (0..k).map(|_| random_rational(r, tail.rank())).collect();
    TailedPolyhedron::new(vertices, tail.clone()).unwrap()
}

/// A point of `tail∨` as a random nonnegative combination of generators.
fn random_dual_point(r: &mut impl Rng, tail: &Cone) -> IntVector {
    tail.dual()
        .generators()
        .iter()
        .fold(IntVector::zeros(tail.rank()), |acc, g| acc.add(&g.scale(&BigInt::from(r.gen_range(0..=4)))))
}

fn projective_line() -> ToricBase {
    ToricBase::new(1, vec![common::cone(1, &[]), common::cone(1, &[&[1]]), common::cone(1, &[&[-1]])]).unwrap()
}

fn random_divisor(r: &mut impl Rng) -> PolyhedralDivisor {
    let n = r.gen_range(1..=3);
    let tail = random_cone(r, n, 4, 2);
    let mut coefficients = BTreeMap::new();
    for label in ["rho_0", "rho_1"] {
        coefficients.insert(label.to_string(), random_polyhedron(r, &tail));
    }
    PolyhedralDivisor::new(projective_line(), tail, coefficients).unwrap()
}

#[test]
fn evaluation_is_superadditive_and_homogeneous() {
    let mut r = rng(40);
    for _ in 0..100 {
        let d = random_divisor(&mut r);
        let u = random_dual_point(&mut r, d.tail());
        let w = random_dual_point(&mut r, d.tail());
        let (du, dw) = (d.evaluate(&u).unwrap(), d.evaluate(&w).unwrap());
        assert!(d.evaluate(&u.add(&w)).unwrap().dominates(&du.add(&dw)));
        let n = r.gen_range(1..=5);
        assert_eq!(
            d.evaluate(&u.scale(&BigInt::from(n))).unwrap(),
            du.scale(&BigRational::from_integer(n.into()))
        );
    }
}

#[test]
fn minkowski_sum_adds_minima() {
    let mut r = rng(41);
    for _ in 0..60 {
        let n = r.gen_range(1..=3);
        let tail = random_cone(&mut r, n, 4, 2);
        let a = random_polyhedron(&mut r, &tail);
        let b = random_polyhedron(&mut r, &tail);
        let sum = minkowski_sum(&a, &b).unwrap();
        for _ in 0..5 {
            let u = random_dual_point(&mut r, &tail);
            assert_eq!(
                sum.min_pairing(&u).unwrap(),
                a.min_pairing(&u).unwrap() + b.min_pairing(&u).unwrap()
            );
        }
        // every pairwise vertex sum lies in the reduced sum
        for p in a.vertices() {
            for q in b.vertices() {
                assert!(sum.contains(&p.add(q)).unwrap());
            }
        }
    }
}

#[test]
fn stored_tail_equals_recession_cone() {
    let mut r = rng(42);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let tail = random_cone(&mut r, n, 4, 2);
        let p = random_polyhedron(&mut r, &tail);
        assert_eq!(p.recession_cone().unwrap(), tail);
        // vertices are irredundant
        for (i, x) in p.vertices().iter().enumerate() {
            let others: Vec<RatVector> =
                p.vertices().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, y)| y.clone()).collect();
            if !others.is_empty() {
                let rest = TailedPolyhedron::new(others, tail.clone()).unwrap();
                assert!(!rest.contains(x).unwrap());
            }
        }
    }
    let (t, s) = (conifold(), diagonal_subtorus());
    let d = downgrade_ppdivisor(&t, &s).unwrap();
    for c in d.coefficients().values() {
        assert_eq!(&c.recession_cone().unwrap(), d.tail());
    }
}

#[test]
fn random_reconstructions_agree() {
    for (t, s) in random_effective_downgrades(43, 10) {
        let d = downgrade_ppdivisor(&t, &s).unwrap();
        assert_eq!(d.tail().dual(), Downgrade::new(&t, &s).unwrap().weight_cone());
        let report = verify_reconstruction(&t, &s, &d, 3).unwrap();
        assert!(report.all_agree(), "{} along {:?}: {:?}", t.sigma(), s.embedding(), report.mismatches());
    }
}

#[test]
fn other_sections_translate_coefficients() {
    let mut pairs = random_effective_downgrades(44, 4);
    pairs.push((conifold(), diagonal_subtorus()));
    let mut r = rng(45);
    for (t, s) in pairs {
        let d = downgrade_ppdivisor(&t, &s).unwrap();
        let rows: Vec<Vec<i64>> = (0..s.sub_rank()).map(|_| vec![r.gen_range(-2..=2)]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
        let shifted = s.with_section_shift(&IntMatrix::from_i64_rows(&refs)).unwrap();
        let e = downgrade_ppdivisor(&t, &shifted).unwrap();
        assert_eq!(d.base(), e.base());
        for (label, a) in d.coefficients() {
            let b = e.coefficient(label).unwrap();
            let shift = b.vertices()[0].sub(&a.vertices()[0]);
            assert!(shift.to_integer().is_some());
            assert_eq!(&a.translate(&shift).unwrap(), b);
        }
        let counts = |x: &PolyhedralDivisor, sec: &SubtorusData| {
            verify_reconstruction(&t, sec, x, 3)
                .unwrap()
                .fibers
                .into_iter()
                .map(|f| (f.weight, f.fiber, f.sections))
                .collect::<Vec<_>>()
        };
        let (before, after) = (counts(&d, &s), counts(&e, &shifted));
        assert_eq!(before, after);
        assert!(before.iter().all(|(_, a, b)| a == b));
    }
}
