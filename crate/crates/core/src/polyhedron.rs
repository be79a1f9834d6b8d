//! Rational polyhedra `{x : a·x + b >= 0}` via homogenization, and lattice
//! point enumeration in boxes.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{int_to_rat, IntVector, RatVector};
use crate::cone::Cone;
use crate::error::Result;

/// An affine constraint `normal·x + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub normal: IntVector,
    pub offset: BigInt,
}

impl AffineForm {
    pub fn new(normal: IntVector, offset: BigInt) -> Self {
        AffineForm { normal, offset }
    }

    pub fn eval(&self, x: &IntVector) -> BigInt {
        self.normal.dot(x) + &self.offset
    }

    fn homogenized(&self) -> IntVector {
        let mut v = self.normal.clone().into_inner();
        v.push(self.offset.clone());
        IntVector::new(v)
    }
}

/// A nonempty rational polyhedron: one point per minimal face plus the
/// recession cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub points: Vec<RatVector>,
    pub tail: Cone,
    dim: usize,
}

impl Polyhedron {
    /// `{x : f(x) >= 0 for f in ineqs, g(x) = 0 for g in eqs}`; `None` when empty.
    pub fn from_constraints(
        ambient: usize,
        ineqs: &[AffineForm],
        eqs: &[AffineForm],
    ) -> Result<Option<Polyhedron>> {
        let mut h_ineqs: Vec<IntVector> = ineqs.iter().map(AffineForm::homogenized).collect();
        h_ineqs.push(IntVector::unit(ambient + 1, ambient));
        let h_eqs: Vec<IntVector> = eqs.iter().map(AffineForm::homogenized).collect();
        let hom = Cone::from_inequalities(ambient + 1, &h_ineqs, &h_eqs)?;
        Ok(Self::from_homogenization(ambient, &hom))
    }

    fn from_homogenization(ambient: usize, hom: &Cone) -> Option<Polyhedron> {
        let mut points = Vec::new();
        let mut tail_rays = Vec::new();
        for r in hom.rays() {
            let s = &r[ambient];
            let x = IntVector::new(r[..ambient].to_vec());
            if s.is_positive() {
                let s = int_to_rat(s);
                points.push(RatVector::new(x.to_rational().iter().map(|c| c / &s).collect()));
            } else {
                tail_rays.push(x);
            }
        }
        if points.is_empty() {
            return None;
        }
        let lines: Vec<IntVector> = hom
            .lineality()
            .iter()
            .map(|l| IntVector::new(l[..ambient].to_vec()))
            .collect();
        let tail = Cone::from_rays_and_lines(ambient, &tail_rays, &lines).ok()?;
        points.sort();
        points.dedup();
        Some(Polyhedron {
            points,
            tail,
            dim: hom.dim() - 1,
        })
    }

    pub fn ambient(&self) -> usize {
        self.tail.rank()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_bounded(&self) -> bool {
        self.tail.is_zero()
    }

    /// Integer box `[lo, hi]` containing the polyhedron, when bounded.
    pub fn integer_bounding_box(&self) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        if !self.is_bounded() {
            return None;
        }
        let n = self.ambient();
        let lo = (0..n)
            .map(|j| self.points.iter().map(|p| p[j].floor().to_integer()).min().unwrap())
            .collect();
        let hi = (0..n)
            .map(|j| self.points.iter().map(|p| p[j].ceil().to_integer()).max().unwrap())
            .collect();
        Some((lo, hi))
    }
}

/// Calls `f` on every integer point of the box `[lo, hi]` (inclusive).
pub fn for_each_box_point(lo: &[BigInt], hi: &[BigInt], mut f: impl FnMut(&IntVector)) {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut cur: Vec<BigInt> = lo.to_vec();
    loop {
        f(&IntVector::new(cur.clone()));
        let mut j = 0;
        loop {
            if j == n {
                return;
            }
            cur[j] += 1;
            if cur[j] <= hi[j] {
                break;
            }
            cur[j] = lo[j].clone();
            j += 1;
        }
    }
}

/// Number of integer points of the box `[lo, hi]` accepted by `keep`.
pub fn count_points(lo: &[BigInt], hi: &[BigInt], mut keep: impl FnMut(&IntVector) -> bool) -> u64 {
    let mut n = 0;
    for_each_box_point(lo, hi, |x| {
        if keep(x) {
            n += 1;
        }
    });
    n
}

pub(crate) fn is_nonnegative_on(forms: &[AffineForm], x: &IntVector) -> bool {
    forms.iter().all(|f| !f.eval(x).is_negative())
}
