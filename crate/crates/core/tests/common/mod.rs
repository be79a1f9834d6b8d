//! Random instance generators and brute-force oracles shared by the
//! integration suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use gitkit::downgrade::{Downgrade, SubtorusData};
use gitkit::toric_git::AffineToricData;
use gitkit::{hilbert_basis, Cone, IntMatrix, IntVector};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

pub fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
    let g: Vec<IntVector> = gens.iter().map(|x| v(x)).collect();
    Cone::from_generators(rank, &g).unwrap()
}

/// `σ = Cone(e1, e2, e1+e3, e2+e3)`.
pub fn conifold() -> AffineToricData {
    AffineToricData::from_rays(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 0, 1]), v(&[0, 1, 1])]).unwrap()
}

/// `(t1, t2) ↦ (t1, t2, t1)`.
pub fn diagonal_subtorus() -> SubtorusData {
    SubtorusData::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 0]]).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, n: usize, bound: i64) -> IntVector {
    IntVector::from_i64s(&(0..n).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

pub fn random_cone(rng: &mut impl Rng, n: usize, max_gens: usize, bound: i64) -> Cone {
    let k = rng.gen_range(0..=max_gens);
    let gens: Vec<IntVector> = (0..k).map(|_| random_vector(rng, n, bound)).collect();
    Cone::from_generators(n, &gens).unwrap()
}

/// A full-dimensional pointed cone.
pub fn random_full_pointed_cone(rng: &mut impl Rng, n: usize, max_gens: usize, bound: i64) -> Cone {
    loop {
        let k = rng.gen_range(n..=max_gens.max(n));
        let gens: Vec<IntVector> = (0..k).map(|_| random_vector(rng, n, bound)).collect();
        let c = Cone::from_generators(n, &gens).unwrap();
        if c.is_pointed() && c.is_full_dimensional() {
            return c;
        }
    }
}

/// A random injective `n × k` matrix with saturated column span.
pub fn random_saturated_embedding(rng: &mut impl Rng, n: usize, k: usize, bound: i64) -> SubtorusData {
    loop {
        let cols: Vec<IntVector> = (0..k).map(|_| random_vector(rng, n, bound)).collect();
        if let Ok(s) = SubtorusData::analyze(&IntMatrix::from_cols(&cols, n)) {
            return s;
        }
    }
}

/// A product of random elementary matrices.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let q = BigInt::from(rng.gen_range(-2..=2));
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = q;
        m = e.mul(&m);
    }
    m
}

/// Whether `x` is a nonnegative integer combination of `basis`, by
/// recursion on the grading `g` (positive on every basis element).
pub fn decomposes(
    x: &IntVector,
    basis: &[IntVector],
    cone: &Cone,
    g: &IntVector,
    memo: &mut HashMap<IntVector, bool>,
) -> bool {
    if x.is_zero() {
        return true;
    }
    if let Some(&b) = memo.get(x) {
        return b;
    }
    let ok = basis.iter().any(|h| {
        let rest = x.sub(h);
        cone.contains_int(&rest) && g.dot(&rest) < g.dot(x) && decomposes(&rest, basis, cone, g, memo)
    });
    memo.insert(x.clone(), ok);
    ok
}

/// Torus orbits of `{xy = zw}` by which coordinates are nonzero, and the
/// cone spanned by the degrees of those coordinates. A pattern `S` occurs
/// iff `{x,y} ⊆ S ⇔ {z,w} ⊆ S`, since `xy = zw` forces both products to
/// vanish or neither.
pub fn vanishing_pattern_cones() -> BTreeSet<Cone> {
    let degrees = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 1, -1])];
    let mut out = BTreeSet::new();
    for mask in 0..16u32 {
        let has = |i: u32| mask >> i & 1 == 1;
        if (has(0) && has(1)) != (has(2) && has(3)) {
            continue;
        }
        let gens: Vec<IntVector> = (0..4).filter(|&i| has(i)).map(|i| degrees[i as usize].clone()).collect();
        out.insert(Cone::from_generators(3, &gens).unwrap());
    }
    out
}

/// Full-dimensional pointed `σ` of rank 2 or 3 whose dual has at most six
/// Hilbert basis elements.
pub fn random_git_instances(seed: u64, count: usize) -> Vec<AffineToricData> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(2..=3);
        let sigma = random_full_pointed_cone(&mut r, n, 5, 2);
        if hilbert_basis(&sigma.dual()).unwrap().len() <= 6 {
            out.push(AffineToricData::new(sigma).unwrap());
        }
    }
    out
}

/// Pointed `σ` of rank 2 to 4 with a saturated subtorus of rank at most 3.
pub fn random_subtorus_pairs(seed: u64, count: usize) -> Vec<(AffineToricData, SubtorusData)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(2..=4);
        let sigma = random_cone(&mut r, n, 5, 2);
        if !sigma.is_pointed() {
            continue;
        }
        let k = r.gen_range(1..n.min(3) + 1);
        let s = random_saturated_embedding(&mut r, n, k, 2);
        out.push((AffineToricData::new(sigma).unwrap(), s));
    }
    out
}

/// Rank-3 `σ` with a rank-2 saturated subtorus whose quotient torus acts
/// effectively.
pub fn random_effective_downgrades(seed: u64, count: usize) -> Vec<(AffineToricData, SubtorusData)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let sigma = random_full_pointed_cone(&mut r, 3, 5, 2);
        let s = random_saturated_embedding(&mut r, 3, 2, 2);
        let t = AffineToricData::new(sigma).unwrap();
        if Downgrade::new(&t, &s).unwrap().check_effective_quotient_action().effective {
            out.push((t, s));
        }
    }
    out
}

/// A nonnegative combination of the monoid generators with coefficients
/// at most `scale`.
pub fn random_weight(r: &mut impl Rng, t: &AffineToricData, scale: i64) -> IntVector {
    t.generators()
        .iter()
        .fold(IntVector::zeros(t.rank()), |acc, g| acc.add(&g.scale(&BigInt::from(r.gen_range(0..=scale)))))
}
