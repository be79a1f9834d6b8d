use gitkit::arith::invariant_factors;
use gitkit::{hnf, kernel_basis, snf, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-10i64..=10, rows * cols).prop_map(move |e| {
        let rows_v: Vec<&[i64]> = e.chunks(cols.max(1)).take(rows).collect();
        if cols == 0 {
            IntMatrix::zeros(rows, 0)
        } else {
            IntMatrix::from_i64_rows(&rows_v)
        }
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn submatrix(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> IntMatrix {
    let mut s = IntMatrix::zeros(rows.len(), cols.len());
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in cols.iter().enumerate() {
            s[(a, b)] = m[(i, j)].clone();
        }
    }
    s
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            combinations(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// `gcd` of all `k × k` minors.
fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            g = g.gcd(&submatrix(m, &rows, &cols).det());
        }
    }
    g
}

proptest! {
    #[test]
    fn hnf_transform_is_unimodular(m in any_matrix()) {
        let (h, u) = hnf(&m);
        prop_assert!(u.det().abs() == BigInt::from(1));
        prop_assert_eq!(h, u.mul(&m));
    }

    #[test]
    fn snf_transforms_are_unimodular(m in any_matrix()) {
        let (s, u, v) = snf(&m);
        prop_assert!(u.det().abs() == BigInt::from(1));
        prop_assert!(v.det().abs() == BigInt::from(1));
        prop_assert_eq!(&s, &u.mul(&m).mul(&v));
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    prop_assert!(s[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn invariant_factors_match_minor_gcds(m in any_matrix()) {
        let d = invariant_factors(&m);
        let mut product = BigInt::from(1);
        for k in 1..=d.len() {
            product *= &d[k - 1];
            prop_assert_eq!(&product, &minor_gcd(&m, k));
        }
    }

    #[test]
    fn kernel_basis_is_a_saturated_kernel(m in any_matrix()) {
        let b = kernel_basis(&m);
        prop_assert_eq!(b.cols(), m.cols() - m.rank());
        prop_assert!(m.mul(&b).is_zero());
        if b.cols() > 0 {
            prop_assert!(invariant_factors(&b).iter().all(|f| *f == BigInt::from(1)));
        }
    }
}
