//! Incremental double description (Motzkin) over the integers.
//!
//! Computes a minimal generating system of `{x : A x >= 0, E x = 0}`: a basis
//! of the lineality space plus one representative per extreme ray of the
//! pointed quotient. Adjacency uses the combinatorial zero-set test, which is
//! exact as long as the current ray list is minimal.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{kernel_basis, IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(n: usize) -> Self {
        ZeroSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: IntVector,
    zeros: ZeroSet,
}

pub(crate) struct Generators {
    pub rays: Vec<IntVector>,
    pub lines: Vec<IntVector>,
}

fn normalize_rows(rows: &[IntVector]) -> Vec<IntVector> {
    let set: BTreeSet<IntVector> = rows
        .iter()
        .filter(|r| !r.is_zero())
        .map(IntVector::primitive)
        .collect();
    set.into_iter().collect()
}

/// `(a·l) x - (a·x) l`, made primitive; zeroes the `a`-component of `x`.
fn eliminate(x: &IntVector, l: &IntVector, a_l: &BigInt, a_x: &BigInt) -> IntVector {
    IntVector::combine(a_l, x, &-a_x, l).primitive()
}

pub(crate) fn double_description(dim: usize, ineqs: &[IntVector], eqs: &[IntVector]) -> Generators {
    let ineqs = normalize_rows(ineqs);
    let eqs = normalize_rows(eqs);
    let mut lines: Vec<IntVector> = if eqs.is_empty() {
        (0..dim).map(|i| IntVector::unit(dim, i)).collect()
    } else {
        kernel_basis(&IntMatrix::from_rows(&eqs, dim)).col_vectors()
    };
    let mut rays: Vec<Ray> = Vec::new();
    let n = ineqs.len();

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(idx) = lines.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lines.remove(idx);
            if a.dot(&l).is_negative() {
                l = l.neg();
            }
            let a_l = a.dot(&l);
            for x in lines.iter_mut() {
                let a_x = a.dot(x);
                if !a_x.is_zero() {
                    *x = eliminate(x, &l, &a_l, &a_x);
                }
            }
            for r in rays.iter_mut() {
                let a_r = a.dot(&r.v);
                if !a_r.is_zero() {
                    r.v = eliminate(&r.v, &l, &a_l, &a_r);
                }
                r.zeros.insert(k);
            }
            // every processed inequality vanishes on a former line
            let mut zeros = ZeroSet::new(n);
            for j in 0..k {
                zeros.insert(j);
            }
            rays.push(Ray { v: l, zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, val) in rays.iter_mut().zip(&values) {
                if val.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }

        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !r.zeros.is_superset_of(&common));
                if !adjacent {
                    continue;
                }
                let v = IntVector::combine(&values[p], &rays[q].v, &-&values[q], &rays[p].v)
                    .primitive();
                let mut zeros = common;
                zeros.insert(k);
                new_rays.push(Ray { v, zeros });
            }
        }
        let old = std::mem::take(&mut rays);
        for (mut r, val) in old.into_iter().zip(values) {
            if val.is_negative() {
                continue;
            }
            if val.is_zero() {
                r.zeros.insert(k);
            }
            rays.push(r);
        }
        rays.extend(new_rays);
    }

    Generators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_orthant() {
        let ineqs: Vec<IntVector> = (0..3).map(|i| IntVector::unit(3, i)).collect();
        let g = double_description(3, &ineqs, &[]);
        assert!(g.lines.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(rays, ineqs.iter().rev().cloned().collect::<Vec<_>>());
    }

    #[test]
    fn square_cone_has_four_rays() {
        // x, y >= 0; z >= x ... the cone over a square
        let ineqs = vec![
            IntVector::from([1, 0, 0]),
            IntVector::from([0, 1, 0]),
            IntVector::from([0, 0, 1]),
            IntVector::from([1, 1, -1]),
        ];
        let g = double_description(3, &ineqs, &[]);
        assert_eq!(g.rays.len(), 4);
        assert!(g.lines.is_empty());
    }

    #[test]
    fn half_space_keeps_lines() {
        let g = double_description(2, &[IntVector::from([1, 0])], &[]);
        assert_eq!(g.rays.len(), 1);
        assert_eq!(g.lines.len(), 1);
    }
}
