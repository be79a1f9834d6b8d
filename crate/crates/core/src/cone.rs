//! Rational polyhedral cones held in both representations.
//!
//! A [`Cone`] stores its extreme rays, facet normals, a lattice basis of its
//! lineality space and a lattice basis of the orthogonal complement of its
//! linear span. All four lists are canonical:
//!
//! * rays are primitive, orthogonal to the lineality space, sorted;
//! * facet normals are primitive, inward, inside the linear span, sorted;
//! * both lattice bases are lower Hermite forms of saturated lattices.
//!
//! Two equal cones therefore compare equal field by field and serialize to
//! the same bytes. Dualizing swaps rays with facets and lineality with
//! equations, so it is an exact involution.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{project_off, saturated_span_basis, IntMatrix, IntVector, RatVector};
use crate::dd::double_description as dd;
use crate::error::{Error, Result};

/// Largest ambient rank accepted by cone constructors.
pub const MAX_RANK: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rank: usize,
    rays: Vec<IntVector>,
    facets: Vec<IntVector>,
    lineality: Vec<IntVector>,
    equations: Vec<IntVector>,
}

/// A face together with a vector of the dual cone cutting it out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub cone: Cone,
    pub supporting_vector: IntVector,
    /// Indices into the parent's ray list.
    pub ray_indices: Vec<usize>,
}

fn check_rank(rank: usize) -> Result<()> {
    if rank > MAX_RANK {
        return Err(Error::RankTooLarge(rank));
    }
    Ok(())
}

fn check_dims(rank: usize, vectors: &[IntVector]) -> Result<()> {
    match vectors.iter().find(|v| v.dim() != rank) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: rank,
            found: v.dim(),
        }),
        None => Ok(()),
    }
}

fn canonical_directions(vectors: &[IntVector], off: &[IntVector]) -> Vec<IntVector> {
    let set: BTreeSet<IntVector> = vectors
        .iter()
        .map(|v| project_off(&v.to_rational(), off).primitive_direction())
        .filter(|v| !v.is_zero())
        .collect();
    set.into_iter().collect()
}

/// V- to H-representation: the cone generated by `generators`.
pub fn double_description(generators: &[IntVector], rank: usize) -> Result<Cone> {
    Cone::from_generators(rank, generators)
}

impl Cone {
    /// The cone generated by `rays`.
    pub fn from_generators(rank: usize, rays: &[IntVector]) -> Result<Cone> {
        Self::from_rays_and_lines(rank, rays, &[])
    }

    /// `cone(rays) + span(lines)`.
    pub fn from_rays_and_lines(rank: usize, rays: &[IntVector], lines: &[IntVector]) -> Result<Cone> {
        check_rank(rank)?;
        check_dims(rank, rays)?;
        check_dims(rank, lines)?;
        let dual = dd(rank, rays, lines);
        let primal = dd(rank, &dual.rays, &dual.lines);
        let lineality = saturated_span_basis(&primal.lines, rank);
        let equations = saturated_span_basis(&dual.lines, rank);
        Ok(Cone {
            rank,
            rays: canonical_directions(&primal.rays, &lineality),
            facets: canonical_directions(&dual.rays, &equations),
            lineality,
            equations,
        })
    }

    /// `{x : a·x >= 0 for a in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(rank: usize, ineqs: &[IntVector], eqs: &[IntVector]) -> Result<Cone> {
        check_rank(rank)?;
        check_dims(rank, ineqs)?;
        check_dims(rank, eqs)?;
        let g = dd(rank, ineqs, eqs);
        Self::from_rays_and_lines(rank, &g.rays, &g.lines)
    }

    pub fn zero(rank: usize) -> Result<Cone> {
        Self::from_generators(rank, &[])
    }

    pub fn full_space(rank: usize) -> Result<Cone> {
        let lines: Vec<IntVector> = (0..rank).map(|i| IntVector::unit(rank, i)).collect();
        Self::from_rays_and_lines(rank, &[], &lines)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    /// Lattice basis of the orthogonal complement of the linear span.
    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Rays followed by `±` lineality vectors: a generating set as a cone.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.neg());
        }
        g
    }

    pub fn dual(&self) -> Cone {
        Cone {
            rank: self.rank,
            rays: self.facets.clone(),
            facets: self.rays.clone(),
            lineality: self.equations.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, p: &RatVector) -> Result<bool> {
        if p.dim() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: p.dim(),
            });
        }
        Ok(self.facets.iter().all(|f| !f.dot_rat(p).is_negative())
            && self.equations.iter().all(|e| e.dot_rat(p).is_zero()))
    }

    /// Integer-point membership; panics on a dimension mismatch.
    pub fn contains_int(&self, p: &IntVector) -> bool {
        assert_eq!(p.dim(), self.rank, "dimension mismatch");
        self.facets.iter().all(|f| !f.dot(p).is_negative())
            && self.equations.iter().all(|e| e.dot(p).is_zero())
    }

    /// Membership in the relative interior.
    pub fn in_relative_interior(&self, p: &IntVector) -> bool {
        self.equations.iter().all(|e| e.dot(p).is_zero())
            && self.facets.iter().all(|f| f.dot(p).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        self.rank == other.rank && other.generators().iter().all(|g| self.contains_int(g))
    }

    /// Sum of the extreme rays; lies in the relative interior.
    pub fn relative_interior_point(&self) -> IntVector {
        self.rays
            .iter()
            .fold(IntVector::zeros(self.rank), |acc, r| acc.add(r))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let ineqs: Vec<IntVector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IntVector> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_inequalities(self.rank, &ineqs, &eqs)
    }

    /// Image under `m`, which maps the ambient space of `self` to `Z^{m.rows()}`.
    pub fn image(&self, m: &IntMatrix) -> Result<Cone> {
        if m.cols() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: m.cols(),
            });
        }
        let rays: Vec<IntVector> = self.rays.iter().map(|r| m.mul_vec(r)).collect();
        let lines: Vec<IntVector> = self.lineality.iter().map(|l| m.mul_vec(l)).collect();
        Cone::from_rays_and_lines(m.rows(), &rays, &lines)
    }

    /// Ordering used for every listing of cones: dimension, then rays.
    pub fn table_key(&self) -> (usize, &[IntVector], &[IntVector]) {
        (self.dim(), &self.rays, &self.lineality)
    }

    /// True if `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        // the face of `other` spanned by a relative-interior point of `self`
        let p = self.relative_interior_point();
        let tight: Vec<&IntVector> = other.facets.iter().filter(|f| f.dot(&p).is_zero()).collect();
        let gens = other.generators();
        gens.iter()
            .filter(|g| tight.iter().all(|f| f.dot(g).is_zero()))
            .all(|g| self.contains_int(g))
    }

    /// All faces, from the minimal face (the lineality space) up to the
    /// cone itself, sorted by dimension then by rays.
    pub fn faces(&self) -> Vec<Face> {
        let nr = self.rays.len();
        let zero_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| (0..nr).filter(|&i| f.dot(&self.rays[i]).is_zero()).collect())
            .collect();
        let all: BTreeSet<usize> = (0..nr).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut queue = vec![all.clone()];
        seen.insert(all);
        while let Some(s) = queue.pop() {
            for z in &zero_sets {
                if s.is_subset(z) {
                    continue;
                }
                let t: BTreeSet<usize> = s.intersection(z).copied().collect();
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|s| {
                let rays: Vec<IntVector> = s.iter().map(|&i| self.rays[i].clone()).collect();
                let cone = Cone::from_rays_and_lines(self.rank, &rays, &self.lineality)
                    .expect("face of a valid cone");
                let supporting_vector = self
                    .facets
                    .iter()
                    .zip(&zero_sets)
                    .filter(|(_, z)| s.is_subset(z))
                    .fold(IntVector::zeros(self.rank), |acc, (f, _)| acc.add(f));
                Face {
                    cone,
                    supporting_vector,
                    ray_indices: s.into_iter().collect(),
                }
            })
            .collect();
        faces.sort_by(|a, b| a.cone.table_key().cmp(&b.cone.table_key()));
        faces
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone(")?;
        let mut first = true;
        for r in &self.rays {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{r}")?;
        }
        for l in &self.lineality {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "±{l}")?;
        }
        write!(f, ")")
    }
}

/// Canonical JSON form of a cone.
#[derive(Serialize, Deserialize)]
struct ConeJson {
    rank: usize,
    rays: Vec<IntVector>,
    facets: Vec<IntVector>,
    lineality: Vec<IntVector>,
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeJson {
            rank: self.rank,
            rays: self.rays.clone(),
            facets: self.facets.clone(),
            lineality: self.lineality.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConeJson::deserialize(d)?;
        let cone = Cone::from_rays_and_lines(raw.rank, &raw.rays, &raw.lineality)
            .map_err(D::Error::custom)?;
        if cone.rays != raw.rays || cone.facets != raw.facets || cone.lineality != raw.lineality {
            return Err(D::Error::custom("cone is not in canonical form"));
        }
        Ok(cone)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn paper_sigma() -> Cone {
        Cone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 0, 1]), v(&[0, 1, 1])])
            .unwrap()
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(q.rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(q.facets(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(q.dual(), q);
    }

    #[test]
    fn empty_generators_give_zero_cone() {
        let z = Cone::from_generators(3, &[]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.dim(), 0);
        let d = z.dual();
        assert_eq!(d, Cone::full_space(3).unwrap());
        assert_eq!(z.faces().len(), 1);
    }

    #[test]
    fn example_sigma_and_dual() {
        let s = paper_sigma();
        assert_eq!(s.rays().len(), 4);
        let d = s.dual();
        let expected = vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[1, 1, -1])];
        assert_eq!(d.rays(), expected.as_slice());
        assert_eq!(d, Cone::from_generators(3, &expected).unwrap());
    }

    #[test]
    fn quadrant_faces() {
        let q = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(q.faces().len(), 4);
        assert_eq!(Cone::full_space(2).unwrap().faces().len(), 1);
    }

    #[test]
    fn example_dual_has_ten_faces() {
        let d = paper_sigma().dual();
        let faces = d.faces();
        let profile: Vec<usize> = (0..=3)
            .map(|k| faces.iter().filter(|f| f.cone.dim() == k).count())
            .collect();
        assert_eq!(profile, vec![1, 4, 4, 1]);
        for f in &faces {
            assert!(d.dual().contains_int(&f.supporting_vector));
            for g in d.generators() {
                let on_face = f.supporting_vector.dot(&g).is_zero();
                assert_eq!(on_face, f.cone.contains_int(&g));
            }
        }
    }

    #[test]
    fn intersections() {
        let d = paper_sigma().dual();
        let a = Cone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        let b = Cone::from_generators(3, &[v(&[1, 0, 0]), v(&[1, 1, -1])]).unwrap();
        assert!(a.is_face_of(&d) && b.is_face_of(&d));
        assert_eq!(a.intersect(&b).unwrap(), Cone::from_generators(3, &[v(&[1, 0, 0])]).unwrap());
        assert_eq!(a.intersect(&a).unwrap(), a);

        let q = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let mq = Cone::from_generators(2, &[v(&[-1, 0]), v(&[0, -1])]).unwrap();
        assert!(q.intersect(&mq).unwrap().is_zero());
    }

    #[test]
    fn images() {
        let d = paper_sigma().dual();
        let i = IntMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 0]]);
        let q = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(d.image(&i).unwrap(), q);
        assert_eq!(d.image(&IntMatrix::identity(3)).unwrap(), d);
        assert!(Cone::zero(3).unwrap().image(&i).unwrap().is_zero());
        assert!(matches!(q.image(&i), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn membership() {
        let s = paper_sigma();
        let d = s.dual();
        assert!(d.contains_int(&v(&[1, 1, 0])));
        assert!(!s.contains(&v(&[0, 0, 1]).to_rational()).unwrap());
        let half = RatVector::new(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::from_integer(BigInt::from(0)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        ]);
        assert!(s.contains(&half).unwrap());
        let c = Cone::from_generators(2, &[v(&[3, 0])]).unwrap();
        assert_eq!(c.relative_interior_point(), v(&[1, 0]));
    }

    #[test]
    fn rank_limit() {
        assert_eq!(Cone::zero(9), Err(Error::RankTooLarge(9)));
    }

    #[test]
    fn non_pointed_canonical_form() {
        let c = Cone::from_rays_and_lines(2, &[v(&[1, 1])], &[v(&[0, 2])]).unwrap();
        assert_eq!(c.lineality(), &[v(&[0, 1])]);
        assert_eq!(c.rays(), &[v(&[1, 0])]);
        assert_eq!(c.facets(), &[v(&[1, 0])]);
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn json_round_trip() {
        let d = paper_sigma().dual();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"rank":3,"rays":[[0,0,1],[0,1,0],[1,0,0],[1,1,-1]],"facets":[[0,1,0],[0,1,1],[1,0,0],[1,0,1]],"lineality":[]}"#
        );
        let back: Cone = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Cone>(
            r#"{"rank":2,"rays":[[1,0]],"facets":[],"lineality":[]}"#
        )
        .is_err());
    }
}
