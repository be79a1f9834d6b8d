//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] and [`BigRational`]; nothing in the
//! crate touches floating point. The integer normal forms follow fixed
//! conventions so that canonical outputs are stable across runs:
//!
//! * [`hnf`] returns the *lower* row Hermite form: the pivot of each nonzero
//!   row is its last nonzero entry, pivot columns increase down the matrix,
//!   zero rows come first, pivots are positive and every entry below a pivot
//!   lies in `[0, pivot)`. A nonsingular square input yields a lower
//!   triangular matrix.
//! * [`hnf_upper`] is the textbook upper echelon form (pivot = first nonzero
//!   entry, entries above pivots reduced, zero rows last).

use std::fmt;
use std::ops::{Deref, Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer vector; the ordering is lexicographic on entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVector(Vec<BigInt>);

/// Rational vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RatVector(Vec<BigRational>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, other: &RatVector) -> BigRational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| b * BigRational::from_integer(a.clone()))
            .sum()
    }

    /// Gcd of the entries (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    /// `a * self + b * other`
    pub fn combine(a: &BigInt, x: &IntVector, b: &BigInt, y: &IntVector) -> IntVector {
        IntVector(x.0.iter().zip(&y.0).map(|(p, q)| a * p + b * q).collect())
    }

    pub fn to_rational(&self) -> RatVector {
        RatVector(
            self.0
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl Deref for IntVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector::from_i64s(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl RatVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVector) -> BigRational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> RatVector {
        RatVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Lcm of the entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    }

    /// `Some` if every entry is an integer.
    pub fn to_integer(&self) -> Option<IntVector> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntVector)
    }

    /// Clears denominators; the result is a positive multiple of `self`.
    pub fn clear_denominators(&self) -> IntVector {
        let l = self.denominator_lcm();
        IntVector(
            self.0
                .iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        )
    }

    /// The primitive integer vector on the ray through `self`.
    pub fn primitive_direction(&self) -> IntVector {
        self.clear_denominators().primitive()
    }
}

impl Deref for RatVector {
    type Target = [BigRational];
    fn deref(&self) -> &[BigRational] {
        &self.0
    }
}

impl From<&IntVector> for RatVector {
    fn from(v: &IntVector) -> Self {
        v.to_rational()
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn int_to_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Row-major integer matrix. Zero rows or columns are allowed so that empty
/// kernels and rank-zero lattices need no special casing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.dim() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[IntVector], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vectors(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim(), "incompatible shapes");
        IntVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn mul_rat_vec(&self, v: &RatVector) -> RatVector {
        assert_eq!(self.cols, v.dim(), "incompatible shapes");
        RatVector((0..self.rows).map(|i| self.row(i).dot_rat(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn row_sub_mul(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self[(source, j)] * q;
            self[(target, j)] -= s;
        }
    }

    /// col[target] -= q * col[source]
    fn col_sub_mul(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self[(i, source)] * q;
            self[(i, target)] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }

    fn reverse_rows(&self) -> IntMatrix {
        let rows: Vec<IntVector> = (0..self.rows).rev().map(|i| self.row(i)).collect();
        IntMatrix::from_rows(&rows, self.cols)
    }

    fn reverse_cols(&self) -> IntMatrix {
        self.transpose().reverse_rows().transpose()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hnf_upper(self);
        (0..h.rows).filter(|&i| !h.row(i).is_zero()).count()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Inverse over the rationals; `None` if singular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..n).map(|j| int_to_rat(&self[(i, j)])).collect();
                row.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
                row
            })
            .collect();
        let (_, pivots) = rref_in_place(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let inv = self.rational_inverse()?;
        let n = self.rows;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_integer() {
                    return None;
                }
                out[(i, j)] = inv[i][j].to_integer();
            }
        }
        Some(out)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).to_i64s()).collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Upper row Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `h = u * m`.
pub fn hnf_upper(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pr = 0;
    for j in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            let piv = (pr..rows)
                .filter(|&i| !h[(i, j)].is_zero())
                .min_by(|&a, &b| h[(a, j)].abs().cmp(&h[(b, j)].abs()).then(a.cmp(&b)));
            let Some(p) = piv else { break };
            h.swap_rows(p, pr);
            u.swap_rows(p, pr);
            let mut clean = true;
            for i in pr + 1..rows {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(pr, j)]);
                h.row_sub_mul(i, pr, &q);
                u.row_sub_mul(i, pr, &q);
                if !h[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pr, j)].is_zero() {
            continue;
        }
        if h[(pr, j)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for i in 0..pr {
            let q = h[(i, j)].div_floor(&h[(pr, j)]);
            h.row_sub_mul(i, pr, &q);
            u.row_sub_mul(i, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

/// Lower row Hermite normal form (see the module docs for the convention).
/// Returns `(h, u)` with `u` unimodular and `h = u * m`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (hu, uu) = hnf_upper(&m.reverse_cols());
    (hu.reverse_rows().reverse_cols(), uu.reverse_rows())
}

/// Smith normal form: returns `(s, u, v)` with `u`, `v` unimodular,
/// `s = u * m * v` diagonal, nonnegative and `s[i][i] | s[i+1][i+1]`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.row_sub_mul(i, t, &q);
                u.row_sub_mul(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.col_sub_mul(j, t, &q);
                v.col_sub_mul(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&s[(i, j)] % &s[(t, t)]).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.row_sub_mul(t, i, &minus_one);
                    u.row_sub_mul(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Diagonal of a Smith form.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = snf(m);
    (0..s.rows.min(s.cols)).map(|i| s[(i, i)].clone()).collect()
}

/// Basis of the integer kernel `{x : m x = 0}` as the columns of the result.
/// The kernel of an integer matrix is automatically saturated; the basis is
/// canonicalized by taking the lower Hermite form of its rows.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf_upper(&m.transpose());
    let rank = (0..h.rows).filter(|&i| !h.row(i).is_zero()).count();
    let basis: Vec<IntVector> = (rank..u.rows).map(|i| u.row(i)).collect();
    IntMatrix::from_cols(&canonical_lattice_basis(&basis, m.cols), m.cols)
}

/// Canonical basis (nonzero rows of the lower Hermite form) of the lattice
/// generated by `vectors`.
pub fn canonical_lattice_basis(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (h, _) = hnf(&IntMatrix::from_rows(vectors, dim));
    h.row_vectors().into_iter().filter(|r| !r.is_zero()).collect()
}

/// Canonical basis of the saturated lattice `span_Q(vectors) ∩ Z^dim`.
pub fn saturated_span_basis(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    if vectors.iter().all(IntVector::is_zero) {
        return Vec::new();
    }
    let perp = kernel_basis(&IntMatrix::from_rows(vectors, dim));
    kernel_basis(&perp.transpose()).col_vectors()
}

/// Basis of the saturated orthogonal complement of `span(vectors)`.
pub fn orthogonal_complement(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    kernel_basis(&IntMatrix::from_rows(vectors, dim)).col_vectors()
}

/// Reduced row echelon form over Q, operating on the first `ncols` columns
/// (the remaining columns ride along). Returns the rank and pivot columns.
pub(crate) fn rref_in_place(a: &mut [Vec<BigRational>], ncols: usize) -> (usize, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

/// Some solution of `a x = b` over Q, or `None` if inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<RatVector> {
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (rank, pivots) = rref_in_place(&mut aug, ncols);
    if aug[rank..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][ncols].clone();
    }
    Some(RatVector(x))
}

/// Rank of a set of rational vectors.
pub fn rational_rank(vectors: &[RatVector], dim: usize) -> usize {
    let mut a: Vec<Vec<BigRational>> = vectors.iter().map(|v| v.0.clone()).collect();
    rref_in_place(&mut a, dim).0
}

/// Orthogonal projection of `x` onto the complement of `span(basis)`.
pub fn project_off(x: &RatVector, basis: &[IntVector]) -> RatVector {
    if basis.is_empty() {
        return x.clone();
    }
    let k = basis.len();
    let gram: Vec<Vec<BigRational>> = (0..k)
        .map(|i| (0..k).map(|j| int_to_rat(&basis[i].dot(&basis[j]))).collect())
        .collect();
    let rhs: Vec<BigRational> = basis.iter().map(|b| b.dot_rat(x)).collect();
    let coeffs = solve_rational(&gram, &rhs, k).expect("gram matrix of independent vectors");
    let mut out = x.clone();
    for (c, b) in coeffs.0.iter().zip(basis) {
        out = out.sub(&b.to_rational().scale(c));
    }
    out
}

// JSON encoding: integers that fit in i64 are plain numbers, anything larger
// is a decimal string; rationals with denominator one are integers, others
// are "p/q" strings.

pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(x) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

pub(crate) fn serialize_rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    if x.is_integer() {
        serialize_bigint(&x.to_integer(), s)
    } else {
        s.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonNumber {
    Int(i64),
    Text(String),
}

fn parse_bigint(n: JsonNumber) -> Result<BigInt, String> {
    match n {
        JsonNumber::Int(v) => Ok(BigInt::from(v)),
        JsonNumber::Text(t) => t.parse().map_err(|_| format!("not an integer: {t}")),
    }
}

fn parse_rational(n: JsonNumber) -> Result<BigRational, String> {
    match n {
        JsonNumber::Int(v) => Ok(rat(v)),
        JsonNumber::Text(t) => match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| format!("bad rational: {t}"))?;
                let q: BigInt = q.trim().parse().map_err(|_| format!("bad rational: {t}"))?;
                if q.is_zero() {
                    return Err(format!("zero denominator: {t}"));
                }
                Ok(BigRational::new(p, q))
            }
            None => t
                .parse::<BigInt>()
                .map(BigRational::from_integer)
                .map_err(|_| format!("bad rational: {t}")),
        },
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Entry<'a>(&'a BigInt);
        impl Serialize for Entry<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        s.collect_seq(self.0.iter().map(Entry))
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<JsonNumber> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(parse_bigint)
            .collect::<Result<Vec<_>, _>>()
            .map(IntVector)
            .map_err(D::Error::custom)
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Entry<'a>(&'a BigRational);
        impl Serialize for Entry<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_rational(self.0, s)
            }
        }
        s.collect_seq(self.0.iter().map(Entry))
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<JsonNumber> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(RatVector)
            .map_err(D::Error::custom)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.row_vectors())
    }
}
