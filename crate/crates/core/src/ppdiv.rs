//! Polyhedral divisors on toric bases and the downgrade construction.
//!
//! For a subtorus `T' ⊆ T` acting on `X_σ`, the quotient data is a toric
//! variety `Y'` whose fan lives in `N'' = N / N'`, and a polyhedral divisor
//! on it with coefficients in `N'_Q`. The coefficient at a ray `ρ` of `Y'`
//! is the slice `σ ∩ p^-1(v_ρ)`, moved into `N'_Q` along a section of `p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::arith::{int_to_rat, serialize_rational, IntMatrix, IntVector, RatVector};
use crate::cone::Cone;
use crate::downgrade::{Downgrade, SubtorusData};
use crate::error::{Error, Result};
use crate::fan::{chamber_fan, covers};
use crate::polyhedron::{count_points, for_each_box_point, is_nonnegative_on, AffineForm, Polyhedron};
use crate::semigroup::{degree_slice, saturation_factor};
use crate::toric_git::AffineToricData;

/// `conv(vertices) + tail`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailedPolyhedron {
    vertices: Vec<RatVector>,
    tail: Cone,
}

impl TailedPolyhedron {
    /// Drops vertices lying in the hull of the others plus the tail. With a
    /// nontrivial lineality space the vertices are replaced by their
    /// projections orthogonal to it.
    pub fn new(vertices: Vec<RatVector>, tail: Cone) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let n = tail.rank();
        if let Some(v) = vertices.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
        let mut vs: Vec<RatVector> = vertices
            .iter()
            .map(|v| crate::arith::project_off(v, tail.lineality()))
            .collect();
        vs.sort();
        vs.dedup();
        let mut i = 0;
        while i < vs.len() {
            let others: Vec<RatVector> = vs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if !others.is_empty() && in_hull(&vs[i], &others, &tail)? {
                vs.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(TailedPolyhedron { vertices: vs, tail })
    }

    /// The tail cone itself, as the polyhedron with vertex `0`.
    pub fn from_tail(tail: Cone) -> Self {
        TailedPolyhedron {
            vertices: vec![RatVector::zeros(tail.rank())],
            tail,
        }
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn rank(&self) -> usize {
        self.tail.rank()
    }

    /// `{v : v + Δ ⊆ Δ}`, recomputed from the homogenization.
    pub fn recession_cone(&self) -> Result<Cone> {
        let n = self.rank();
        let hom = homogenization(&self.vertices, &self.tail)?;
        let mut eqs = hom.equations().to_vec();
        eqs.push(IntVector::unit(n + 1, n));
        let rec = Cone::from_inequalities(n + 1, hom.facets(), &eqs)?;
        let drop = |x: &IntVector| IntVector::new(x[..n].to_vec());
        let rays: Vec<IntVector> = rec.rays().iter().map(drop).collect();
        let lines: Vec<IntVector> = rec.lineality().iter().map(drop).collect();
        Cone::from_rays_and_lines(n, &rays, &lines)
    }

    pub fn contains(&self, x: &RatVector) -> Result<bool> {
        in_hull(x, &self.vertices, &self.tail)
    }

    /// `min ⟨u, Δ⟩`.
    pub fn min_pairing(&self, u: &IntVector) -> Result<BigRational> {
        if u.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: u.dim(),
            });
        }
        if !self.tail.dual().contains_int(u) {
            return Err(Error::EvaluationUnbounded);
        }
        Ok(self
            .vertices
            .iter()
            .map(|v| u.dot_rat(v))
            .min()
            .expect("nonempty vertex list"))
    }

    pub fn translate(&self, by: &RatVector) -> Result<Self> {
        Self::new(self.vertices.iter().map(|v| v.add(by)).collect(), self.tail.clone())
    }

    pub fn image(&self, m: &IntMatrix) -> Result<Self> {
        Self::new(
            self.vertices.iter().map(|v| m.mul_rat_vec(v)).collect(),
            self.tail.image(m)?,
        )
    }
}

/// `Cone((q, 1) for q in points, (t, 0) for t in tail)`.
fn homogenization(points: &[RatVector], tail: &Cone) -> Result<Cone> {
    let n = tail.rank();
    let lift = |x: &IntVector, last: BigInt| {
        let mut v = x.clone().into_inner();
        v.push(last);
        IntVector::new(v)
    };
    let mut rays: Vec<IntVector> = points
        .iter()
        .map(|p| {
            let d = p.denominator_lcm();
            lift(&p.scale(&int_to_rat(&d)).to_integer().expect("cleared"), d)
        })
        .collect();
    rays.extend(tail.rays().iter().map(|r| lift(r, BigInt::zero())));
    let lines: Vec<IntVector> = tail.lineality().iter().map(|l| lift(l, BigInt::zero())).collect();
    Cone::from_rays_and_lines(n + 1, &rays, &lines)
}

fn in_hull(x: &RatVector, points: &[RatVector], tail: &Cone) -> Result<bool> {
    let hom = homogenization(points, tail)?;
    let mut v = x.entries().to_vec();
    v.push(BigRational::from_integer(1.into()));
    hom.contains(&RatVector::new(v))
}

pub fn minkowski_sum(a: &TailedPolyhedron, b: &TailedPolyhedron) -> Result<TailedPolyhedron> {
    if a.rank() != b.rank() {
        return Err(Error::DimensionMismatch {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    if a.tail != b.tail {
        return Err(Error::TailMismatch);
    }
    let sums = a
        .vertices
        .iter()
        .flat_map(|p| b.vertices.iter().map(move |q| p.add(q)))
        .collect();
    TailedPolyhedron::new(sums, a.tail.clone())
}

/// A ray of the base fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseRay {
    pub label: String,
    pub generator: IntVector,
}

/// A toric variety given by its fan; rays are labelled `rho_0, rho_1, ...`
/// in lexicographic order of their primitive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricBase {
    rank: usize,
    rays: Vec<BaseRay>,
    cones: Vec<Cone>,
}

impl ToricBase {
    pub fn new(rank: usize, mut cones: Vec<Cone>) -> Result<Self> {
        if let Some(c) = cones.iter().find(|c| c.rank() != rank) {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: c.rank(),
            });
        }
        cones.sort_by(|a, b| a.table_key().cmp(&b.table_key()));
        cones.dedup();
        let mut gens: Vec<IntVector> = cones.iter().flat_map(|c| c.rays().to_vec()).collect();
        gens.sort();
        gens.dedup();
        let rays = gens
            .into_iter()
            .enumerate()
            .map(|(i, generator)| BaseRay {
                label: format!("rho_{i}"),
                generator,
            })
            .collect();
        Ok(ToricBase { rank, rays, cones })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[BaseRay] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn ray(&self, label: &str) -> Option<&BaseRay> {
        self.rays.iter().find(|r| r.label == label)
    }

    /// Cones not contained in another cone of the fan.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && d.contains_cone(c)))
            .collect()
    }

    /// Labels of the rays of `cone`.
    pub fn labels_of(&self, cone: &Cone) -> Vec<&str> {
        self.rays
            .iter()
            .filter(|r| cone.rays().contains(&r.generator))
            .map(|r| r.label.as_str())
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.rank == 0
            || covers(&self.cones, &Cone::full_space(self.rank).expect("rank validated"))
                .unwrap_or(false)
    }

    /// The support is a convex cone.
    pub fn has_convex_support(&self) -> bool {
        let gens: Vec<IntVector> = self.cones.iter().flat_map(|c| c.generators()).collect();
        let hull = Cone::from_generators(self.rank, &gens).expect("rank validated");
        covers(&self.cones, &hull).unwrap_or(false)
    }
}

impl Serialize for ToricBase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cones: Vec<Vec<&str>> = self.cones.iter().map(|c| self.labels_of(c)).collect();
        let mut st = s.serialize_struct("ToricBase", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("rays", &self.rays)?;
        st.serialize_field("cones", &cones)?;
        st.end()
    }
}

/// `Σ Δ_ρ ⊗ D_ρ` over the rays of a toric base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyhedralDivisor {
    base: ToricBase,
    tail: Cone,
    coefficients: BTreeMap<String, TailedPolyhedron>,
}

impl PolyhedralDivisor {
    pub fn new(base: ToricBase, tail: Cone, coefficients: BTreeMap<String, TailedPolyhedron>) -> Result<Self> {
        for (label, c) in &coefficients {
            if base.ray(label).is_none() {
                return Err(Error::Invalid(format!("unknown ray label {label}")));
            }
            if c.tail != tail {
                return Err(Error::TailMismatch);
            }
        }
        Ok(PolyhedralDivisor {
            base,
            tail,
            coefficients,
        })
    }

    pub fn base(&self) -> &ToricBase {
        &self.base
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn coefficients(&self) -> &BTreeMap<String, TailedPolyhedron> {
        &self.coefficients
    }

    pub fn coefficient(&self, label: &str) -> Option<&TailedPolyhedron> {
        self.coefficients.get(label)
    }

    /// `𝔇(u) = Σ min⟨u, Δ_ρ⟩ D_ρ`; rays without a coefficient get `0`.
    pub fn evaluate(&self, u: &IntVector) -> Result<RationalDivisor> {
        if u.dim() != self.tail.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.tail.rank(),
                found: u.dim(),
            });
        }
        if !self.tail.dual().contains_int(u) {
            return Err(Error::EvaluationUnbounded);
        }
        let mut out = BTreeMap::new();
        for r in &self.base.rays {
            let value = match self.coefficients.get(&r.label) {
                Some(c) => c.min_pairing(u)?,
                None => BigRational::zero(),
            };
            out.insert(r.label.clone(), value);
        }
        Ok(RationalDivisor { coefficients: out })
    }
}

/// A `Q`-divisor supported on the invariant prime divisors of a toric base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalDivisor {
    pub coefficients: BTreeMap<String, BigRational>,
}

impl RationalDivisor {
    pub fn get(&self, label: &str) -> BigRational {
        self.coefficients.get(label).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> RationalDivisor {
        RationalDivisor {
            coefficients: self.coefficients.iter().map(|(l, c)| (l.clone(), c * k)).collect(),
        }
    }

    pub fn add(&self, other: &RationalDivisor) -> RationalDivisor {
        let mut out = self.coefficients.clone();
        for (l, c) in &other.coefficients {
            *out.entry(l.clone()).or_insert_with(BigRational::zero) += c;
        }
        RationalDivisor { coefficients: out }
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &RationalDivisor) -> bool {
        self.coefficients
            .keys()
            .chain(other.coefficients.keys())
            .all(|l| self.get(l) >= other.get(l))
    }
}

impl Serialize for RationalDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Rat<'a>(&'a BigRational);
        impl Serialize for Rat<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_rational(self.0, s)
            }
        }
        let mut m = s.serialize_map(Some(self.coefficients.len()))?;
        for (l, c) in &self.coefficients {
            m.serialize_entry(l, &Rat(c))?;
        }
        m.end()
    }
}

/// The fan of `Y'`: all `⋂ {p(F) : v ∈ p(F)}` for faces `F` of `σ`.
pub fn quotient_fan(sigma: &Cone, s: &SubtorusData) -> Result<ToricBase> {
    let k = s.quotient_rank();
    let images = sigma
        .faces()
        .iter()
        .map(|f| f.cone.image(s.projection()))
        .collect::<Result<Vec<_>>>()?;
    ToricBase::new(k, chamber_fan(&images)?)
}

/// `σ ∩ p^-1(v)` as a polyhedron in `N_Q`.
fn slice(sigma: &Cone, s: &SubtorusData, v: &IntVector) -> Result<Option<Polyhedron>> {
    degree_slice(v, s.projection(), sigma)
}

/// Builds `(Y', 𝔇')` for the `T'`-action on `X_σ`.
pub fn downgrade_ppdivisor(t: &AffineToricData, s: &SubtorusData) -> Result<PolyhedralDivisor> {
    let cert = Downgrade::new(t, s)?.check_effective_quotient_action();
    if !cert.effective {
        return Err(Error::IneffectiveQuotientAction {
            unspanned: cert.unspanned,
        });
    }
    let sigma = t.sigma();
    let base = quotient_fan(sigma, s)?;
    let zero = IntVector::zeros(s.quotient_rank());
    let tail_slice = slice(sigma, s, &zero)?.expect("0 lies in every slice");
    let tail = tail_slice.tail.image(s.pi_s())?;
    let mut coefficients = BTreeMap::new();
    for r in base.rays() {
        let p = slice(sigma, s, &r.generator)?.ok_or(Error::EmptyPolyhedron)?;
        let vertices = p.points.iter().map(|x| s.pi_s().mul_rat_vec(x)).collect();
        coefficients.insert(r.label.clone(), TailedPolyhedron::new(vertices, tail.clone())?);
    }
    PolyhedralDivisor::new(base, tail, coefficients)
}

/// One fiber of the reconstruction check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    pub weight: IntVector,
    /// `#{u ∈ σ∨ ∩ M : i(u) = v}`.
    pub fiber: u64,
    /// Lattice points of the section polyhedron of `𝔇'(v)`.
    pub sections: u64,
    /// Both counts were cut to `|w_j| <= box` in `M''` coordinates.
    pub truncated: bool,
}

impl FiberCount {
    pub fn agrees(&self) -> bool {
        self.fiber == self.sections
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructionReport {
    pub box_bound: u64,
    pub fibers: Vec<FiberCount>,
}

impl ReconstructionReport {
    pub fn all_agree(&self) -> bool {
        self.fibers.iter().all(FiberCount::agrees)
    }

    pub fn mismatches(&self) -> Vec<&FiberCount> {
        self.fibers.iter().filter(|f| !f.agrees()).collect()
    }
}

/// Compares graded dimensions of `C[σ∨ ∩ M]` under the `M'`-grading with
/// global sections of `𝔇'(v)` for every `v ∈ i(ω)` with `|v_j| <= box`.
///
/// Under the splitting `u = π_s^T v + p^T w` both sides are counted over
/// `w ∈ M''`; when either fiber is unbounded both are restricted to
/// `|w_j| <= box`.
pub fn verify_reconstruction(
    t: &AffineToricData,
    s: &SubtorusData,
    d: &PolyhedralDivisor,
    box_bound: u64,
) -> Result<ReconstructionReport> {
    let omega = Downgrade::new(t, s)?.weight_cone();
    let b = BigInt::from(box_bound);
    let n1 = s.sub_rank();
    let mut weights = Vec::new();
    for_each_box_point(&vec![-&b; n1], &vec![b.clone(); n1], |v| {
        if omega.contains_int(v) {
            weights.push(v.clone());
        }
    });
    let fibers = weights
        .par_iter()
        .map(|v| count_fiber(t, s, d, v, &b))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReconstructionReport {
        box_bound,
        fibers,
    })
}

fn count_fiber(
    t: &AffineToricData,
    s: &SubtorusData,
    d: &PolyhedralDivisor,
    v: &IntVector,
    b: &BigInt,
) -> Result<FiberCount> {
    let dual = t.sigma_dual();
    let k = s.quotient_rank();
    let fiber = degree_slice(v, s.character_map(), dual)?;
    let divisor = d.evaluate(v)?;
    let mut forms = Vec::new();
    for r in d.base().rays() {
        // ⟨w, v_ρ⟩ + D_ρ >= 0, cleared of denominators
        let c = divisor.get(&r.label);
        let den = c.denom().clone();
        forms.push(AffineForm::new(r.generator.scale(&den), c.numer().clone()));
    }
    let sections = Polyhedron::from_constraints(k, &forms, &[])?;
    let bounded_fiber = fiber.as_ref().is_none_or(Polyhedron::is_bounded);
    let bounded_sections = sections.as_ref().is_none_or(Polyhedron::is_bounded);
    let truncated = !(bounded_fiber && bounded_sections);

    let fiber_count = match &fiber {
        None => 0,
        Some(f) if !truncated => {
            // direct enumeration of lattice points of the fiber polytope
            let (lo, hi) = f.integer_bounding_box().expect("bounded");
            count_points(&lo, &hi, |u| {
                dual.contains_int(u) && s.restrict(u) == *v
            })
        }
        Some(_) => {
            let base = s.pi_s().transpose().mul_vec(v);
            let lift = s.projection().transpose();
            count_points(&vec![-b; k], &vec![b.clone(); k], |w| {
                dual.contains_int(&base.add(&lift.mul_vec(w)))
            })
        }
    };
    let section_count = match &sections {
        None => 0,
        Some(p) => {
            let (lo, hi) = if truncated {
                (vec![-b; k], vec![b.clone(); k])
            } else {
                p.integer_bounding_box().expect("bounded")
            };
            count_points(&lo, &hi, |w| {
                is_nonnegative_on(&forms, w)
            })
        }
    };
    Ok(FiberCount {
        weight: v.clone(),
        fiber: fiber_count,
        sections: section_count,
        truncated,
    })
}

/// `𝔇'(v) = (1/k) 𝔇'(kv)` with `k` the saturation factor of `v`.
pub fn homogenized_evaluate(
    d: &PolyhedralDivisor,
    v: &IntVector,
    t: &AffineToricData,
    s: &SubtorusData,
) -> Result<(u64, RationalDivisor)> {
    let k = saturation_factor(v, s.character_map(), t.sigma_dual())?;
    let kv = v.scale(&BigInt::from(k));
    let value = d.evaluate(&kv)?;
    Ok((k, value.scale(&BigRational::new(1.into(), k.into()))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Proper,
    NotProper,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperSample {
    pub weight: IntVector,
    pub interior: bool,
    pub cartier: bool,
    pub semiample: bool,
    /// Checked only in the interior of the weight cone.
    pub big: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperReport {
    pub verdict: Verdict,
    pub samples: Vec<ProperSample>,
    pub notes: Vec<String>,
}

/// Checks Cartier, semiample and big on a relative-interior sample of every
/// face of the dual of the tail.
pub fn check_proper(d: &PolyhedralDivisor) -> Result<ProperReport> {
    let base = d.base();
    let mut notes = Vec::new();
    if !base.has_convex_support() {
        notes.push("base fan support is not convex".to_string());
        return Ok(ProperReport {
            verdict: Verdict::Undecided,
            samples: Vec::new(),
            notes,
        });
    }
    let weights = d.tail().dual();
    let mut samples = Vec::new();
    for f in weights.faces() {
        let u = f.cone.relative_interior_point();
        let interior = weights.is_full_dimensional() && weights.in_relative_interior(&u);
        let divisor = d.evaluate(&u)?;
        let (cartier, semiample) = cartier_and_semiample(base, &divisor)?;
        let big = if interior {
            Some(section_polyhedron(base, &divisor)?.is_some_and(|p| p.dim() == base.rank()))
        } else {
            None
        };
        samples.push(ProperSample {
            weight: u,
            interior,
            cartier,
            semiample,
            big,
        });
    }
    if !weights.is_full_dimensional() {
        notes.push("weight cone is not full-dimensional; bigness not tested".to_string());
    }
    let ok = samples
        .iter()
        .all(|s| s.cartier && s.semiample && s.big != Some(false));
    Ok(ProperReport {
        verdict: if ok { Verdict::Proper } else { Verdict::NotProper },
        samples,
        notes,
    })
}

fn integral_form(normal: &IntVector, offset: &BigRational) -> AffineForm {
    let den = offset.denom().clone();
    AffineForm::new(normal.scale(&den), offset.numer().clone())
}

/// `{w : ⟨w, v_ρ⟩ + D_ρ >= 0}`.
fn section_polyhedron(base: &ToricBase, divisor: &RationalDivisor) -> Result<Option<Polyhedron>> {
    let forms: Vec<AffineForm> = base
        .rays()
        .iter()
        .map(|r| integral_form(&r.generator, &divisor.get(&r.label)))
        .collect();
    Polyhedron::from_constraints(base.rank(), &forms, &[])
}

/// Per maximal cone `τ`: some `m_τ` with `⟨m_τ, v_ρ⟩ = -D_ρ` on the rays of
/// `τ` (Cartier), and one such `m_τ` in the section polyhedron (semiample).
fn cartier_and_semiample(base: &ToricBase, divisor: &RationalDivisor) -> Result<(bool, bool)> {
    let all: Vec<AffineForm> = base
        .rays()
        .iter()
        .map(|r| integral_form(&r.generator, &divisor.get(&r.label)))
        .collect();
    let mut cartier = true;
    let mut semiample = true;
    for tau in base.maximal_cones() {
        let eqs: Vec<AffineForm> = base
            .rays()
            .iter()
            .zip(&all)
            .filter(|(r, _)| tau.rays().contains(&r.generator))
            .map(|(_, f)| f.clone())
            .collect();
        if Polyhedron::from_constraints(base.rank(), &[], &eqs)?.is_none() {
            cartier = false;
            semiample = false;
            continue;
        }
        if Polyhedron::from_constraints(base.rank(), &all, &eqs)?.is_none() {
            semiample = false;
        }
    }
    Ok((cartier, semiample))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn r(x: &[i64]) -> RatVector {
        v(x).to_rational()
    }

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<IntVector> = gens.iter().map(|x| v(x)).collect();
        Cone::from_generators(rank, &g).unwrap()
    }

    fn example() -> (AffineToricData, SubtorusData) {
        let t = AffineToricData::from_rays(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 0, 1]), v(&[0, 1, 1])])
            .unwrap();
        let s = SubtorusData::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 0]]).unwrap();
        (t, s)
    }

    #[test]
    fn minkowski_examples() {
        let zero = Cone::zero(2).unwrap();
        let a = TailedPolyhedron::new(vec![r(&[0, 0]), r(&[1, 0])], zero.clone()).unwrap();
        let b = TailedPolyhedron::new(vec![r(&[0, 0]), r(&[0, 1])], zero.clone()).unwrap();
        let square = minkowski_sum(&a, &b).unwrap();
        assert_eq!(square.vertices(), &[r(&[0, 0]), r(&[0, 1]), r(&[1, 0]), r(&[1, 1])]);

        let q = cone(2, &[&[1, 0], &[0, 1]]);
        let a = TailedPolyhedron::new(vec![r(&[1, 0])], q.clone()).unwrap();
        let b = TailedPolyhedron::new(vec![r(&[0, 1])], q.clone()).unwrap();
        let sum = minkowski_sum(&a, &b).unwrap();
        assert_eq!(sum.vertices(), &[r(&[1, 1])]);
        assert_eq!(minkowski_sum(&a, &TailedPolyhedron::from_tail(q.clone())).unwrap(), a);
        assert_eq!(minkowski_sum(&a, &square), Err(Error::TailMismatch));
    }

    #[test]
    fn redundant_vertices_and_tail() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        let p = TailedPolyhedron::new(vec![r(&[1, 0]), r(&[0, 1]), r(&[2, 2])], q.clone()).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.recession_cone().unwrap(), q);
        assert_eq!(p.min_pairing(&v(&[1, 1])).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(p.min_pairing(&v(&[-1, 1])), Err(Error::EvaluationUnbounded));
    }

    #[test]
    fn example_quotient_fan() {
        let (t, s) = example();
        let base = quotient_fan(t.sigma(), &s).unwrap();
        assert_eq!(base.rank(), 1);
        let gens: Vec<_> = base.rays().iter().map(|r| r.generator.clone()).collect();
        assert_eq!(gens, vec![v(&[-1]), v(&[1])]);
        assert_eq!(base.cones().len(), 3);
        assert!(base.is_complete());
    }

    #[test]
    fn affine_line_base() {
        let t = AffineToricData::from_rays(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let s = SubtorusData::from_i64_rows(&[&[1], &[0]]).unwrap();
        let base = quotient_fan(t.sigma(), &s).unwrap();
        assert_eq!(base.cones().len(), 2);
        assert_eq!(base.rays()[0].generator, v(&[1]));
        assert!(!base.is_complete());
        assert!(base.has_convex_support());
    }

    #[test]
    fn example_ppdivisor() {
        let (t, s) = example();
        let d = downgrade_ppdivisor(&t, &s).unwrap();
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(d.tail(), &q);
        assert_eq!(d.tail().dual(), Downgrade::new(&t, &s).unwrap().weight_cone());
        assert_eq!(d.coefficient("rho_0").unwrap().vertices(), &[r(&[1, 0])]);
        assert_eq!(d.coefficient("rho_1").unwrap().vertices(), &[r(&[0, 1])]);
        let e = d.evaluate(&v(&[2, 3])).unwrap();
        assert_eq!(e.get("rho_0"), BigRational::from_integer(2.into()));
        assert_eq!(e.get("rho_1"), BigRational::from_integer(3.into()));
        assert_eq!(check_proper(&d).unwrap().verdict, Verdict::Proper);
    }

    #[test]
    fn example_reconstruction() {
        let (t, s) = example();
        let d = downgrade_ppdivisor(&t, &s).unwrap();
        let report = verify_reconstruction(&t, &s, &d, 6).unwrap();
        assert_eq!(report.fibers.len(), 49);
        assert!(report.all_agree());
        let f = report.fibers.iter().find(|f| f.weight == v(&[2, 3])).unwrap();
        assert_eq!((f.fiber, f.sections), (6, 6));
        let f = report.fibers.iter().find(|f| f.weight == v(&[1, 0])).unwrap();
        assert_eq!((f.fiber, f.sections), (2, 2));
        let f = report.fibers.iter().find(|f| f.weight == v(&[0, 0])).unwrap();
        assert_eq!((f.fiber, f.sections), (1, 1));
    }

    #[test]
    fn homogenized_matches_plain_evaluation() {
        let (t, s) = example();
        let d = downgrade_ppdivisor(&t, &s).unwrap();
        for w in [[0, 0], [1, 0], [1, 1], [3, 2]] {
            let (k, h) = homogenized_evaluate(&d, &v(&w), &t, &s).unwrap();
            assert_eq!(k, 1);
            assert_eq!(h, d.evaluate(&v(&w)).unwrap());
        }
    }

    #[test]
    fn identity_and_trivial_subtori() {
        let (t, _) = example();
        let id = SubtorusData::analyze(&IntMatrix::identity(3)).unwrap();
        let d = downgrade_ppdivisor(&t, &id).unwrap();
        assert_eq!(d.base().rank(), 0);
        assert!(d.coefficients().is_empty());
        assert_eq!(d.tail(), t.sigma());
        assert_eq!(check_proper(&d).unwrap().verdict, Verdict::Proper);
        assert!(verify_reconstruction(&t, &id, &d, 2).unwrap().all_agree());

        let trivial = SubtorusData::analyze(&IntMatrix::zeros(3, 0)).unwrap();
        let d = downgrade_ppdivisor(&t, &trivial).unwrap();
        assert_eq!(d.base().rank(), 3);
        assert_eq!(d.tail().rank(), 0);
        assert!(verify_reconstruction(&t, &trivial, &d, 0).unwrap().all_agree());
    }

    #[test]
    fn not_big_control() {
        // on P^1 with Δ_0 = {0} and Δ_1 = {-1}, u = 1 gives degree -1
        let base = ToricBase::new(1, vec![cone(1, &[]), cone(1, &[&[1]]), cone(1, &[&[-1]])]).unwrap();
        let tail = cone(1, &[&[1]]);
        let mut coefficients = BTreeMap::new();
        coefficients.insert("rho_0".to_string(), TailedPolyhedron::new(vec![r(&[0])], tail.clone()).unwrap());
        coefficients.insert("rho_1".to_string(), TailedPolyhedron::new(vec![r(&[-1])], tail.clone()).unwrap());
        let d = PolyhedralDivisor::new(base, tail, coefficients).unwrap();
        let report = check_proper(&d).unwrap();
        assert_eq!(report.verdict, Verdict::NotProper);
        assert!(report.samples.iter().any(|s| s.big == Some(false)));
    }
}
