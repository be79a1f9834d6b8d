//! Restricting the torus action to a subtorus `T' ⊆ T`.
//!
//! A subtorus is given by the images in `N` of a basis of `N'`. Dually this
//! yields the exact sequence `0 → M'' → M → M' → 0` with `i: M → M'` the
//! transpose of the embedding, and `N'' = N / N'` with projection `p`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{hnf_upper, invariant_factors, kernel_basis, rational_rank, snf, IntMatrix, IntVector};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::{chamber, chamber_fan};
use crate::toric_git::{check_correspondence, AffineToricData, CorrespondenceCheck, SemistableLocus};

/// The lattice maps induced by a saturated embedding `N' → N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubtorusData {
    /// `n × n'`, columns are the images of a basis of `N'`.
    embedding: IntMatrix,
    /// `i: M → M'`, the transpose of the embedding.
    character_map: IntMatrix,
    /// `n × n''`, columns form a basis of `M'' = ker i`.
    kernel: IntMatrix,
    /// `p: N → N''`, the transpose of `kernel`.
    projection: IntMatrix,
    /// `s: N'' → N` with `p s = id`.
    section: IntMatrix,
    /// `π_s: N → N'`, projection along the section.
    pi_s: IntMatrix,
}

impl SubtorusData {
    pub fn analyze(embedding: &IntMatrix) -> Result<Self> {
        let (n, n1) = (embedding.rows(), embedding.cols());
        if n1 > n || embedding.rank() < n1 {
            return Err(Error::NonInjectiveEmbedding { rank: n, cols: n1 });
        }
        if let Some(factor) = invariant_factors(embedding).into_iter().find(|d| !d.is_one()) {
            return Err(Error::NonSaturatedEmbedding { factor });
        }
        let character_map = embedding.transpose();
        let kernel = kernel_basis(&character_map);
        let projection = kernel.transpose();
        let section = choose_section(embedding, &projection);
        let split = embedding.hstack(&section);
        let inverse = split.inverse_unimodular().expect("N = N' ⊕ s(N'')");
        let pi_rows: Vec<IntVector> = (0..n1).map(|i| inverse.row(i)).collect();
        Ok(SubtorusData {
            embedding: embedding.clone(),
            character_map,
            kernel,
            projection,
            section,
            pi_s: IntMatrix::from_rows(&pi_rows, n),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::analyze(&IntMatrix::from_i64_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.embedding.rows()
    }

    /// Rank of `N'` and `M'`.
    pub fn sub_rank(&self) -> usize {
        self.embedding.cols()
    }

    /// Rank of `N''` and `M''`.
    pub fn quotient_rank(&self) -> usize {
        self.kernel.cols()
    }

    pub fn embedding(&self) -> &IntMatrix {
        &self.embedding
    }

    pub fn character_map(&self) -> &IntMatrix {
        &self.character_map
    }

    pub fn kernel(&self) -> &IntMatrix {
        &self.kernel
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn section(&self) -> &IntMatrix {
        &self.section
    }

    pub fn pi_s(&self) -> &IntMatrix {
        &self.pi_s
    }

    /// `i(u)`.
    pub fn restrict(&self, u: &IntVector) -> IntVector {
        self.character_map.mul_vec(u)
    }

    /// Same maps with another section `s' = s + ι a`, where `shift` is the
    /// `n' × n''` matrix `a`.
    pub fn with_section_shift(&self, shift: &IntMatrix) -> Result<Self> {
        let section = add(&self.section, &self.embedding.mul(shift));
        let mut out = self.clone();
        let inverse = self
            .embedding
            .hstack(&section)
            .inverse_unimodular()
            .expect("N = N' ⊕ s(N'')");
        let n = self.rank();
        let rows: Vec<IntVector> = (0..self.sub_rank()).map(|i| inverse.row(i)).collect();
        out.pi_s = IntMatrix::from_rows(&rows, n);
        out.section = section;
        Ok(out)
    }
}

fn add(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] += &b[(i, j)];
        }
    }
    out
}

/// An integral right inverse of `p`, with every column reduced modulo the
/// image of the embedding against its upper Hermite form.
fn choose_section(embedding: &IntMatrix, projection: &IntMatrix) -> IntMatrix {
    let (n, k) = (projection.cols(), projection.rows());
    if k == 0 {
        return IntMatrix::zeros(n, 0);
    }
    // p = u^-1 [I 0] v^-1, so v [u; 0] is a right inverse
    let (_, u, v) = snf(projection);
    let mut top = IntMatrix::zeros(n, k);
    for i in 0..k {
        for j in 0..k {
            top[(i, j)] = u[(i, j)].clone();
        }
    }
    let raw = v.mul(&top);
    let (h, _) = hnf_upper(&embedding.transpose());
    let pivots: Vec<(IntVector, usize)> = h
        .row_vectors()
        .into_iter()
        .filter_map(|r| {
            let c = r.iter().position(|x| !x.is_zero())?;
            Some((r, c))
        })
        .collect();
    let cols: Vec<IntVector> = raw
        .col_vectors()
        .into_iter()
        .map(|mut s| {
            for (r, c) in &pivots {
                let q = s[*c].div_floor(&r[*c]);
                if !q.is_zero() {
                    s = s.sub(&r.scale(&q));
                }
            }
            s
        })
        .collect();
    IntMatrix::from_cols(&cols, n)
}

/// One term of a union decomposition of a downgraded locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionTerm {
    /// A weight with `i(u) ∈ Z>0·v` (or `i(u) = 0` when `v = 0`).
    pub weight: IntVector,
    /// Generators whose sum has the same locus as `weight`.
    pub subset: Vec<usize>,
    pub locus: SemistableLocus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DowngradedRow {
    pub cone: Cone,
    pub locus: SemistableLocus,
    pub sample: IntVector,
    pub union: Vec<UnionTerm>,
    /// The union of the terms' loci equals `locus`.
    pub union_agrees: bool,
    /// `⋂ i(λ(u))` over the terms equals `cone`.
    pub intersection_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DowngradedGitData {
    pub weight_cone: Cone,
    /// Distinct images of the orbit cones.
    pub orbit_cones: Vec<Cone>,
    pub rows: Vec<DowngradedRow>,
    pub quasi_fan: bool,
}

impl DowngradedGitData {
    pub fn git_fan(&self) -> Vec<&Cone> {
        self.rows.iter().map(|r| &r.cone).collect()
    }

    pub fn check_correspondence(&self) -> CorrespondenceCheck {
        check_correspondence(self.rows.iter().map(|r| (&r.cone, &r.locus)))
    }
}

/// Differences of monoid elements with equal `i`-image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EffectivenessCertificate {
    pub effective: bool,
    /// Linearly independent elements of `M''`, each `u - u'` for sums `u`,
    /// `u'` of generators with `i(u) = i(u')`.
    pub differences: Vec<IntVector>,
    /// `rank M''` minus the rank of `differences`.
    pub unspanned: usize,
}

/// A row of a published downgraded table: the weight `v`, weights `u`
/// whose loci are said to form `X^ss(v)`, and the cone said to correspond.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DowngradeClaim {
    pub weight: IntVector,
    pub union: Vec<IntVector>,
    pub cone: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DowngradeDiscrepancy {
    ConeMismatch { claimed: Cone, definitional: Cone },
    TermOffRay { term: IntVector, image: IntVector },
    UnionMismatch { claimed: SemistableLocus, definitional: SemistableLocus },
    OutsideWeightCone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DowngradeClaimAudit {
    pub claim: DowngradeClaim,
    pub definitional_cone: Option<Cone>,
    pub definitional_locus: SemistableLocus,
    pub discrepancies: Vec<DowngradeDiscrepancy>,
}

impl DowngradeClaimAudit {
    pub fn matches(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// GIT data of `X` under `T'`, computed from the `T`-data.
pub struct Downgrade<'a> {
    toric: &'a AffineToricData,
    subtorus: &'a SubtorusData,
    images: Vec<Cone>,
}

impl<'a> Downgrade<'a> {
    pub fn new(toric: &'a AffineToricData, subtorus: &'a SubtorusData) -> Result<Self> {
        if subtorus.rank() != toric.rank() {
            return Err(Error::DimensionMismatch {
                expected: toric.rank(),
                found: subtorus.rank(),
            });
        }
        let images = toric
            .orbit_cones()
            .iter()
            .map(|o| o.cone().image(subtorus.character_map()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Downgrade {
            toric,
            subtorus,
            images,
        })
    }

    /// `i(ω)`.
    pub fn weight_cone(&self) -> Cone {
        self.toric
            .weight_cone()
            .image(self.subtorus.character_map())
            .expect("ranks checked")
    }

    /// `i(F)` for every orbit cone `F`, in orbit-cone order.
    pub fn image_cones(&self) -> &[Cone] {
        &self.images
    }

    fn check_weight(&self, v: &IntVector) -> Result<()> {
        if v.dim() != self.subtorus.sub_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.subtorus.sub_rank(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// `{F : v ∈ i(F)}`.
    pub fn semistable_locus(&self, v: &IntVector) -> Result<SemistableLocus> {
        self.check_weight(v)?;
        Ok(SemistableLocus::new(
            (0..self.images.len())
                .filter(|&k| self.images[k].contains_int(v))
                .collect(),
        ))
    }

    /// `⋂ {i(F) : v ∈ i(F)}`.
    pub fn git_cone(&self, v: &IntVector) -> Result<Cone> {
        self.check_weight(v)?;
        chamber(&self.images, v)?.ok_or_else(|| Error::OutsideWeightCone(v.to_string()))
    }

    /// Weights `u` with `i(u) ∈ Z>0·v` whose `T`-loci cover the downgraded
    /// locus: one per face `G` of `σ∨` whose relative interior meets
    /// `i^-1(Q>0·v)`, taken in that relative interior.
    pub fn union_terms(&self, v: &IntVector) -> Result<Vec<UnionTerm>> {
        self.check_weight(v)?;
        let n = self.toric.rank();
        let i = self.subtorus.character_map();
        let ray = Cone::from_generators(v.dim(), std::slice::from_ref(v))?;
        let pull = |rows: &[IntVector]| -> Vec<IntVector> {
            rows.iter().map(|r| i.transpose().mul_vec(r)).collect()
        };
        let ray_ineqs = pull(ray.facets());
        let ray_eqs = pull(ray.equations());
        let mut terms = Vec::new();
        for o in self.toric.orbit_cones() {
            let g = o.cone();
            let ineqs = [g.facets(), ray_ineqs.as_slice()].concat();
            let eqs = [g.equations(), ray_eqs.as_slice()].concat();
            let d = Cone::from_inequalities(n, &ineqs, &eqs)?;
            let u = d.relative_interior_point();
            if !g.in_relative_interior(&u) {
                continue;
            }
            let image = i.mul_vec(&u);
            let Some(u) = scale_onto_ray(&u, &image, v) else {
                continue;
            };
            terms.push(UnionTerm {
                locus: self.toric.semistable_locus(&u)?,
                weight: u,
                subset: o.generator_indices.clone(),
            });
        }
        Ok(terms)
    }

    /// GIT cones of `T'`, each with its union decomposition cross-check.
    pub fn git_fan(&self) -> Result<DowngradedGitData> {
        let cones = chamber_fan(&self.images)?;
        let mut rows = Vec::with_capacity(cones.len());
        for cone in cones {
            let sample = cone.relative_interior_point();
            let locus = self.semistable_locus(&sample)?;
            let union = self.union_terms(&sample)?;
            let union_locus = union
                .iter()
                .fold(SemistableLocus::default(), |acc, t| acc.union(&t.locus));
            let mut meet: Option<Cone> = None;
            for t in &union {
                let c = self.toric.git_cone(&t.weight)?.image(self.subtorus.character_map())?;
                meet = Some(match meet {
                    None => c,
                    Some(m) => m.intersect(&c)?,
                });
            }
            rows.push(DowngradedRow {
                union_agrees: union_locus == locus,
                intersection_agrees: meet.as_ref() == Some(&cone),
                cone,
                locus,
                sample,
                union,
            });
        }
        let orbit_cones: BTreeSet<Cone> = self.images.iter().cloned().collect();
        let mut orbit_cones: Vec<Cone> = orbit_cones.into_iter().collect();
        orbit_cones.sort_by(|a, b| a.table_key().cmp(&b.table_key()));
        Ok(DowngradedGitData {
            weight_cone: self.weight_cone(),
            orbit_cones,
            quasi_fan: rows.iter().any(|r| !r.cone.is_pointed()),
            rows,
        })
    }

    /// Whether `T/T'` acts effectively, certified by differences of
    /// generator sums in a common `i`-fiber spanning `M''`.
    pub fn check_effective_quotient_action(&self) -> EffectivenessCertificate {
        let rank = self.subtorus.quotient_rank();
        let gens = self.toric.generators();
        let mut differences: Vec<IntVector> = Vec::new();
        let add_if_new = |d: IntVector, diffs: &mut Vec<IntVector>| {
            if d.is_zero() {
                return;
            }
            let d = if d.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                d.neg()
            } else {
                d
            };
            let mut trial: Vec<_> = diffs.iter().map(IntVector::to_rational).collect();
            trial.push(d.to_rational());
            if rational_rank(&trial, d.dim()) == trial.len() {
                diffs.push(d);
            }
        };
        if gens.len() <= crate::toric_git::MAX_POSET_GENERATORS {
            // subset sums grouped by image
            let mut fibers: BTreeMap<IntVector, Vec<IntVector>> = BTreeMap::new();
            for mask in 0..1usize << gens.len() {
                let u = (0..gens.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(IntVector::zeros(self.toric.rank()), |acc, i| acc.add(&gens[i]));
                fibers.entry(self.subtorus.restrict(&u)).or_default().push(u);
            }
            for fiber in fibers.values() {
                for u in &fiber[1..] {
                    add_if_new(u.sub(&fiber[0]), &mut differences);
                }
                if differences.len() == rank {
                    break;
                }
            }
        }
        if differences.len() < rank && self.toric.sigma_dual().is_full_dimensional() {
            // c·g + b and c·g lie in σ∨ for g interior and c large
            let g = gens.iter().fold(IntVector::zeros(self.toric.rank()), |a, x| a.add(x));
            for b in self.subtorus.kernel().col_vectors() {
                let c = self
                    .toric
                    .sigma_dual()
                    .facets()
                    .iter()
                    .map(|f| (-f.dot(&b)).div_ceil(&f.dot(&g)))
                    .fold(BigInt::zero(), |a, x| a.max(x));
                debug_assert!(self.toric.sigma_dual().contains_int(&g.scale(&c).add(&b)));
                add_if_new(b, &mut differences);
            }
        }
        let unspanned = rank - differences.len();
        EffectivenessCertificate {
            effective: unspanned == 0,
            differences,
            unspanned,
        }
    }

    pub fn audit_claims(&self, claims: &[DowngradeClaim]) -> Result<Vec<DowngradeClaimAudit>> {
        claims.iter().map(|c| self.audit_claim(c)).collect()
    }

    fn audit_claim(&self, claim: &DowngradeClaim) -> Result<DowngradeClaimAudit> {
        let v = &claim.weight;
        let mut discrepancies = Vec::new();
        let definitional_locus = self.semistable_locus(v)?;
        let definitional_cone = match self.git_cone(v) {
            Ok(c) => Some(c),
            Err(Error::OutsideWeightCone(_)) => None,
            Err(e) => return Err(e),
        };
        let claimed = Cone::from_generators(v.dim(), &claim.cone)?;
        match &definitional_cone {
            Some(d) if *d != claimed => discrepancies.push(DowngradeDiscrepancy::ConeMismatch {
                claimed,
                definitional: d.clone(),
            }),
            Some(_) => {}
            None => discrepancies.push(DowngradeDiscrepancy::OutsideWeightCone),
        }
        let mut union = SemistableLocus::default();
        for u in &claim.union {
            let image = self.subtorus.restrict(u);
            if scale_onto_ray(u, &image, v).is_none() {
                discrepancies.push(DowngradeDiscrepancy::TermOffRay {
                    term: u.clone(),
                    image,
                });
            }
            union = union.union(&self.toric.semistable_locus(u)?);
        }
        if !claim.union.is_empty() && union != definitional_locus {
            discrepancies.push(DowngradeDiscrepancy::UnionMismatch {
                claimed: union,
                definitional: definitional_locus.clone(),
            });
        }
        Ok(DowngradeClaimAudit {
            claim: claim.clone(),
            definitional_cone,
            definitional_locus,
            discrepancies,
        })
    }
}

/// The smallest positive multiple of `u` whose image `image·m` is a positive
/// integer multiple of `v`; for `v = 0` requires `image = 0`.
fn scale_onto_ray(u: &IntVector, image: &IntVector, v: &IntVector) -> Option<IntVector> {
    if v.is_zero() {
        return image.is_zero().then(|| u.clone());
    }
    // image = (a/b) v with a, b > 0
    let j = v.iter().position(|x| !x.is_zero())?;
    let (a, b) = (image[j].clone(), v[j].clone());
    if a.is_zero() || a.is_negative() != b.is_negative() {
        return None;
    }
    if image.scale(&b) != v.scale(&a) {
        return None;
    }
    let g = a.gcd(&b);
    let m = b.abs() / g;
    Some(u.scale(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn example() -> (AffineToricData, SubtorusData) {
        let t = AffineToricData::from_rays(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 0, 1]), v(&[0, 1, 1])])
            .unwrap();
        let s = SubtorusData::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 0]]).unwrap();
        (t, s)
    }

    #[test]
    fn example_maps() {
        let (_, s) = example();
        assert_eq!(s.character_map(), &IntMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 0]]));
        assert_eq!(s.kernel().col_vectors(), vec![v(&[-1, 0, 1])]);
        assert_eq!(s.projection().mul_vec(&v(&[2, 5, 7])), v(&[5]));
        assert_eq!(s.section().col_vectors(), vec![v(&[0, 0, 1])]);
        assert_eq!(s.pi_s(), &IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn degenerate_embeddings() {
        let id = SubtorusData::analyze(&IntMatrix::identity(3)).unwrap();
        assert_eq!(id.character_map(), &IntMatrix::identity(3));
        assert_eq!(id.quotient_rank(), 0);
        let trivial = SubtorusData::analyze(&IntMatrix::zeros(3, 0)).unwrap();
        assert_eq!(trivial.quotient_rank(), 3);
        assert_eq!(trivial.projection(), &IntMatrix::identity(3));
        assert_eq!(
            SubtorusData::from_i64_rows(&[&[2], &[0], &[0]]),
            Err(Error::NonSaturatedEmbedding { factor: BigInt::from(2) })
        );
        assert!(matches!(
            SubtorusData::from_i64_rows(&[&[1, 2], &[1, 2], &[0, 0]]),
            Err(Error::NonInjectiveEmbedding { .. })
        ));
    }

    #[test]
    fn downgraded_loci() {
        let (t, s) = example();
        let d = Downgrade::new(&t, &s).unwrap();
        assert_eq!(d.weight_cone(), Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap());
        let e1 = d.semistable_locus(&v(&[1, 0])).unwrap();
        assert_eq!(e1.len(), 6);
        assert_eq!(d.semistable_locus(&v(&[5, 0])).unwrap(), e1);
        assert_eq!(d.semistable_locus(&v(&[0, 0])).unwrap().len(), 10);
        for w in [[1, 0], [0, 1], [1, 1], [2, 3]] {
            let locus = d.semistable_locus(&v(&w)).unwrap();
            let union = d
                .union_terms(&v(&w))
                .unwrap()
                .iter()
                .fold(SemistableLocus::default(), |acc, t| acc.union(&t.locus));
            assert_eq!(union, locus);
        }
    }

    #[test]
    fn downgraded_fan() {
        let (t, s) = example();
        let d = Downgrade::new(&t, &s).unwrap();
        let fan = d.git_fan().unwrap();
        assert_eq!(fan.rows.len(), 4);
        assert!(fan.rows.iter().all(|r| r.union_agrees && r.intersection_agrees));
        assert!(fan.check_correspondence().holds());
        assert_eq!(
            d.git_cone(&v(&[1, 1])).unwrap(),
            Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap()
        );
        assert!(matches!(d.git_cone(&v(&[-1, 0])), Err(Error::OutsideWeightCone(_))));
    }

    #[test]
    fn effective_action() {
        let (t, s) = example();
        let cert = Downgrade::new(&t, &s).unwrap().check_effective_quotient_action();
        assert!(cert.effective);
        assert_eq!(cert.differences, vec![v(&[1, 0, -1])]);
        let id = SubtorusData::analyze(&IntMatrix::identity(3)).unwrap();
        assert!(Downgrade::new(&t, &id).unwrap().check_effective_quotient_action().effective);
        let trivial = SubtorusData::analyze(&IntMatrix::zeros(3, 0)).unwrap();
        let cert = Downgrade::new(&t, &trivial).unwrap().check_effective_quotient_action();
        assert!(cert.effective);
        assert_eq!(cert.differences.len(), 3);
    }

    #[test]
    fn claim_with_term_off_the_ray() {
        let (t, s) = example();
        let d = Downgrade::new(&t, &s).unwrap();
        let claim = DowngradeClaim {
            weight: v(&[1, 1]),
            union: vec![v(&[1, 1, 0]), v(&[2, 1, -1]), v(&[1, 0, 1])],
            cone: vec![v(&[1, 0]), v(&[0, 1])],
        };
        let audit = d.audit_claims(&[claim]).unwrap().remove(0);
        assert_eq!(
            audit.discrepancies[0],
            DowngradeDiscrepancy::TermOffRay {
                term: v(&[1, 0, 1]),
                image: v(&[2, 0])
            }
        );
    }

    #[test]
    fn section_shift() {
        let (_, s) = example();
        let shifted = s.with_section_shift(&IntMatrix::from_i64_rows(&[&[1], &[-2]])).unwrap();
        assert_eq!(shifted.section().col_vectors(), vec![v(&[1, -2, 2])]);
        assert_eq!(shifted.projection().mul(shifted.section()), IntMatrix::identity(1));
    }
}
