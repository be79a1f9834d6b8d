//! Hilbert bases of cone semigroups and saturation of graded pieces.
//!
//! The Hilbert basis of a pointed cone is found by triangulating the cone,
//! listing the lattice points of the half-open fundamental parallelepiped of
//! every simplicial piece (these together with the rays generate the
//! semigroup) and discarding reducible candidates in order of degree.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{int_to_rat, saturated_span_basis, snf, solve_rational, IntMatrix, IntVector};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::polyhedron::{AffineForm, Polyhedron};

/// The minimal generating set of `cone ∩ Z^rank` for a pointed cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBasis {
    cone: Cone,
    elements: Vec<IntVector>,
}

impl HilbertBasis {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, u: &IntVector) -> Option<usize> {
        self.elements.binary_search(u).ok()
    }
}

/// Hilbert basis of a pointed cone. Cones that are not full-dimensional are
/// handled in their own saturated lattice.
pub fn hilbert_basis(c: &Cone) -> Result<HilbertBasis> {
    if !c.is_pointed() {
        return Err(Error::NoFiniteHilbertBasis);
    }
    let elements = pointed_hilbert_basis(c);
    Ok(HilbertBasis {
        cone: c.clone(),
        elements,
    })
}

/// A finite generating set of the monoid `c ∩ Z^rank`, for any cone.
///
/// For pointed cones this is the Hilbert basis. Otherwise it is the Hilbert
/// basis of the image in the quotient by the lineality lattice, lifted back,
/// together with `±` a basis of the lineality lattice.
pub fn monoid_generators(c: &Cone) -> Vec<IntVector> {
    if c.is_pointed() {
        return pointed_hilbert_basis(c);
    }
    let n = c.rank();
    let l = c.lineality().len();
    let q = LinealityQuotient::new(c.lineality(), n);
    let rays: Vec<IntVector> = c.rays().iter().map(|r| q.project(r)).collect();
    let image = Cone::from_generators(n - l, &rays).expect("rank already validated");
    let mut gens: Vec<IntVector> = pointed_hilbert_basis(&image)
        .iter()
        .map(|h| q.lift(h))
        .collect();
    for b in c.lineality() {
        gens.push(b.clone());
        gens.push(b.neg());
    }
    gens.sort();
    gens
}

/// Splitting `Z^n = L ⊕ Q` for a saturated lattice `L`, from a Smith form.
struct LinealityQuotient {
    /// Columns `l..n` of the transform: project to quotient coordinates.
    proj: IntMatrix,
    /// Rows `l..n` of its inverse: lift quotient coordinates.
    lift: IntMatrix,
}

impl LinealityQuotient {
    fn new(basis: &[IntVector], n: usize) -> Self {
        let l = basis.len();
        let (_, _, v) = snf(&IntMatrix::from_rows(basis, n));
        let w = v.inverse_unimodular().expect("unimodular transform");
        let proj_rows: Vec<IntVector> = (l..n).map(|j| v.col(j)).collect();
        let lift_rows: Vec<IntVector> = (l..n).map(|i| w.row(i)).collect();
        LinealityQuotient {
            proj: IntMatrix::from_rows(&proj_rows, n),
            lift: IntMatrix::from_rows(&lift_rows, n).transpose(),
        }
    }

    fn project(&self, x: &IntVector) -> IntVector {
        self.proj.mul_vec(x)
    }

    fn lift(&self, y: &IntVector) -> IntVector {
        self.lift.mul_vec(y)
    }
}

fn pointed_hilbert_basis(c: &Cone) -> Vec<IntVector> {
    if c.is_zero() {
        return Vec::new();
    }
    let n = c.rank();
    let basis = saturated_span_basis(c.rays(), n);
    let mut candidates: BTreeSet<IntVector> = c.rays().iter().cloned().collect();
    for simplex in triangulate(c) {
        let coords: Vec<IntVector> = simplex.iter().map(|r| coordinates(&basis, r)).collect();
        for p in parallelepiped_points(&coords) {
            candidates.insert(combine_rows(&basis, &p, n));
        }
    }
    let grading = c
        .facets()
        .iter()
        .fold(IntVector::zeros(n), |acc, f| acc.add(f));
    let mut by_degree: Vec<(BigInt, IntVector)> = candidates
        .into_iter()
        .map(|x| (grading.dot(&x), x))
        .collect();
    by_degree.sort();
    let mut kept: Vec<IntVector> = Vec::new();
    for (_, x) in by_degree {
        if !kept.iter().any(|h| c.contains_int(&x.sub(h))) {
            kept.push(x);
        }
    }
    kept.sort();
    kept
}

/// Pulling triangulation of a pointed cone by its rays, lowest ray first.
fn triangulate(c: &Cone) -> Vec<Vec<IntVector>> {
    let rays = c.rays();
    if rays.len() == c.dim() {
        return vec![rays.to_vec()];
    }
    let apex = &rays[0];
    let mut out = Vec::new();
    for f in c.faces() {
        if f.cone.dim() + 1 != c.dim() || f.cone.contains_int(apex) {
            continue;
        }
        for mut s in triangulate(&f.cone) {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    out
}

/// Coordinates of `x` with respect to the lattice basis `basis`.
fn coordinates(basis: &[IntVector], x: &IntVector) -> IntVector {
    let n = x.dim();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| basis.iter().map(|b| int_to_rat(&b[i])).collect())
        .collect();
    let b: Vec<BigRational> = x.iter().map(int_to_rat).collect();
    solve_rational(&a, &b, basis.len())
        .and_then(|c| c.to_integer())
        .expect("point of a saturated lattice")
}

fn combine_rows(basis: &[IntVector], coeffs: &IntVector, n: usize) -> IntVector {
    basis
        .iter()
        .zip(coeffs.iter())
        .fold(IntVector::zeros(n), |acc, (b, c)| acc.add(&b.scale(c)))
}

/// Nonzero lattice points `Σ λ_i r_i` with `0 <= λ_i < 1` for linearly
/// independent `rays` spanning `Z^k` rationally.
fn parallelepiped_points(rays: &[IntVector]) -> Vec<IntVector> {
    let k = rays.len();
    if k == 0 {
        return Vec::new();
    }
    let a = IntMatrix::from_cols(rays, k);
    let (s, u, _) = snf(&a);
    let u_inv = u.inverse_unimodular().expect("unimodular transform");
    let a_inv = a.rational_inverse().expect("simplicial cone");
    let moduli: Vec<BigInt> = (0..k).map(|i| s[(i, i)].clone()).collect();
    let mut out = Vec::new();
    let mut y = vec![BigInt::zero(); k];
    loop {
        let x = u_inv.mul_vec(&IntVector::new(y.clone()));
        let lambda: Vec<BigRational> = (0..k)
            .map(|i| {
                let li: BigRational = (0..k).map(|j| &a_inv[i][j] * int_to_rat(&x[j])).sum();
                &li - li.floor()
            })
            .collect();
        let mut p = vec![BigRational::zero(); k];
        for (l, r) in lambda.iter().zip(rays) {
            for (pj, rj) in p.iter_mut().zip(r.iter()) {
                *pj += l * int_to_rat(rj);
            }
        }
        let p = IntVector::new(p.into_iter().map(|c| c.to_integer()).collect());
        if !p.is_zero() {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            y[i] += 1;
            if y[i] < moduli[i] {
                break;
            }
            y[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Least `k >= 1` such that the Veronese subalgebra of degrees `Z>=0·kv`
/// is generated by its pieces of degree `0` and `kv`.
///
/// The algebra is the semigroup algebra of `weight_cone ∩ Z^n`, graded by
/// `grading: Z^n → Z^m`. For each `k` this decides whether every element of
/// the monoid `{u ∈ weight_cone : grading(u) ∈ Z>=0·kv}` is a sum of
/// elements of degree `0` and `kv`, by computing its Hilbert basis. The
/// search stops at `lcm(vertex denominators of the degree-v slice) ·
/// max(1, dim - 1)`, where the slice becomes a lattice polyhedron dilated
/// far enough to be integrally closed.
pub fn saturation_factor(v: &IntVector, grading: &IntMatrix, weight_cone: &Cone) -> Result<u64> {
    let n = weight_cone.rank();
    if grading.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: grading.cols(),
        });
    }
    if v.dim() != grading.rows() {
        return Err(Error::DimensionMismatch {
            expected: grading.rows(),
            found: v.dim(),
        });
    }
    let slice = degree_slice(v, grading, weight_cone)?
        .ok_or_else(|| Error::OutsideWeightCone(v.to_string()))?;
    if v.is_zero() {
        return Ok(1);
    }
    let den = slice
        .points
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
    let bound = den * BigInt::from(slice.dim().saturating_sub(1).max(1));
    let bound = bound.to_u64().unwrap_or(u64::MAX);
    for k in 1..=bound {
        if veronese_generated_in_degree_one(v, grading, weight_cone, k) {
            return Ok(k);
        }
    }
    Err(Error::BoundExhausted { bound })
}

/// `{u ∈ weight_cone : grading(u) = v}`.
pub(crate) fn degree_slice(v: &IntVector, grading: &IntMatrix, weight_cone: &Cone) -> Result<Option<Polyhedron>> {
    let n = weight_cone.rank();
    let ineqs: Vec<AffineForm> = weight_cone
        .facets()
        .iter()
        .map(|f| AffineForm::new(f.clone(), BigInt::zero()))
        .collect();
    let mut eqs: Vec<AffineForm> = weight_cone
        .equations()
        .iter()
        .map(|e| AffineForm::new(e.clone(), BigInt::zero()))
        .collect();
    for j in 0..grading.rows() {
        eqs.push(AffineForm::new(grading.row(j), -&v[j]));
    }
    Polyhedron::from_constraints(n, &ineqs, &eqs)
}

fn veronese_generated_in_degree_one(v: &IntVector, grading: &IntMatrix, weight_cone: &Cone, k: u64) -> bool {
    // (u, t) with grading(u) = t·k·v, u in the weight cone, t >= 0
    let n = weight_cone.rank();
    let kv = v.scale(&BigInt::from(k));
    let mut eqs: Vec<IntVector> = (0..grading.rows())
        .map(|j| {
            let mut row = grading.row(j).into_inner();
            row.push(-&kv[j]);
            IntVector::new(row)
        })
        .collect();
    let extend = |x: &IntVector| {
        let mut row = x.clone().into_inner();
        row.push(BigInt::zero());
        IntVector::new(row)
    };
    eqs.extend(weight_cone.equations().iter().map(extend));
    let mut ineqs: Vec<IntVector> = weight_cone.facets().iter().map(extend).collect();
    ineqs.push(IntVector::unit(n + 1, n));
    let fiber = Cone::from_inequalities(n + 1, &ineqs, &eqs).expect("rank already validated");
    monoid_generators(&fiber)
        .iter()
        .all(|g| g[n] <= BigInt::one() && !g[n].is_negative())
}
