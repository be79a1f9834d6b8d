mod common;

use common::{random_cone, rng};
use gitkit::{Cone, IntMatrix};
use rand::Rng;

#[test]
fn dual_is_an_involution() {
    let mut r = rng(1);
    for _ in 0..200 {
        let n = r.gen_range(1..=4);
        let c = random_cone(&mut r, n, 6, 3);
        assert_eq!(c.dual().dual(), c, "{c}");
        // the rebuilt cone has the same canonical form
        let rebuilt = Cone::from_rays_and_lines(n, c.rays(), c.lineality()).unwrap();
        assert_eq!(rebuilt, c);
        let from_h = Cone::from_inequalities(n, c.facets(), c.equations()).unwrap();
        assert_eq!(from_h, c);
    }
}

#[test]
fn faces_are_exposed_and_closed_under_intersection() {
    let mut r = rng(2);
    for _ in 0..40 {
        let n = r.gen_range(1..=4);
        let c = random_cone(&mut r, n, 6, 3);
        let faces: Vec<Cone> = c.faces().into_iter().map(|f| {
            assert!(c.contains_cone(&f.cone));
            assert!(c.dual().contains_int(&f.supporting_vector));
            let cut = c.intersect(&Cone::from_inequalities(n, &[], std::slice::from_ref(&f.supporting_vector)).unwrap()).unwrap();
            assert_eq!(cut, f.cone);
            f.cone
        }).collect();
        for a in &faces {
            for b in &faces {
                assert!(faces.contains(&a.intersect(b).unwrap()));
            }
        }
    }
}

#[test]
fn image_is_monotone() {
    let mut r = rng(3);
    for _ in 0..50 {
        let n = r.gen_range(1..=4);
        let k = r.gen_range(1..=4);
        let b = random_cone(&mut r, n, 5, 3);
        // a ⊆ b: generated by a subset of b's generators
        let sub: Vec<_> = b.generators().into_iter().filter(|_| r.gen_bool(0.5)).collect();
        let a = Cone::from_generators(n, &sub).unwrap();
        let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| r.gen_range(-2..=2)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
        let m = IntMatrix::from_i64_rows(&refs);
        assert!(b.image(&m).unwrap().contains_cone(&a.image(&m).unwrap()));
    }
}

#[test]
fn json_round_trip() {
    let mut r = rng(4);
    for _ in 0..50 {
        let n = r.gen_range(1..=4);
        let c = random_cone(&mut r, n, 6, 3);
        let s = serde_json::to_string(&c).unwrap();
        let back: Cone = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
