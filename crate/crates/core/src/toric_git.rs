//! GIT data of an affine toric variety under its big torus.
//!
//! Points of the variety are never materialized. A point is classified by
//! its orbit cone, which for `X = Spec C[σ∨ ∩ M]` is a face of `σ∨`, so a
//! semistable locus `X^ss(u) = {x : u ∈ ω(x)}` is stored as the set of faces
//! containing `u`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::{canonical_lattice_basis, IntMatrix, IntVector};
use crate::cone::{Cone, Face};
use crate::error::{Error, Result};
use crate::semigroup::{hilbert_basis, monoid_generators, HilbertBasis};

/// Largest generating set for which the subset-sum poset is built.
pub const MAX_POSET_GENERATORS: usize = 16;

/// `σ`, `σ∨` and the generators of `σ∨ ∩ M`, with the face lattice of `σ∨`
/// computed once.
#[derive(Clone, Debug)]
pub struct AffineToricData {
    sigma: Cone,
    sigma_dual: Cone,
    hilbert: Option<HilbertBasis>,
    generators: Vec<IntVector>,
    orbit_cones: Vec<OrbitCone>,
}

/// A face of `σ∨` with the generators lying on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCone {
    pub face: Face,
    pub generator_indices: Vec<usize>,
}

impl OrbitCone {
    pub fn cone(&self) -> &Cone {
        &self.face.cone
    }
}

/// A semistable locus as a set of orbit-cone indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SemistableLocus {
    members: BTreeSet<usize>,
}

impl SemistableLocus {
    pub fn new(members: BTreeSet<usize>) -> Self {
        SemistableLocus { members }
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &SemistableLocus) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &SemistableLocus) -> SemistableLocus {
        SemistableLocus::new(self.members.union(&other.members).copied().collect())
    }
}

/// One line of the correspondence table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GitRow {
    pub cone: Cone,
    pub locus: SemistableLocus,
    /// The weight the row was computed from.
    pub sample: IntVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct GitData {
    pub orbit_cones: Vec<OrbitCone>,
    pub orbit_lattices: Vec<IntMatrix>,
    pub rows: Vec<GitRow>,
    /// Some GIT cone has a lineality space.
    pub quasi_fan: bool,
}

impl GitData {
    pub fn git_fan(&self) -> Vec<&Cone> {
        self.rows.iter().map(|r| &r.cone).collect()
    }

    /// Checks that cones and loci are in order-reversing bijection.
    pub fn check_correspondence(&self) -> CorrespondenceCheck {
        check_correspondence(self.rows.iter().map(|r| (&r.cone, &r.locus)))
    }
}

/// Outcome of the bijection and order-reversal test on a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceCheck {
    pub cones: usize,
    pub distinct_loci: usize,
    pub pairs_checked: usize,
    /// Row pairs `(a, b)` with `cone_a ⊆ cone_b` not equivalent to
    /// `locus_a ⊇ locus_b`.
    pub violations: Vec<(usize, usize)>,
}

impl CorrespondenceCheck {
    pub fn holds(&self) -> bool {
        self.cones == self.distinct_loci && self.violations.is_empty()
    }
}

pub(crate) fn check_correspondence<'a>(
    rows: impl Iterator<Item = (&'a Cone, &'a SemistableLocus)>,
) -> CorrespondenceCheck {
    let rows: Vec<_> = rows.collect();
    let distinct_loci = rows.iter().map(|(_, l)| *l).collect::<BTreeSet<_>>().len();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            pairs_checked += 1;
            let (ca, la) = rows[a];
            let (cb, lb) = rows[b];
            let forward = cb.contains_cone(ca) == la.members.is_superset(&lb.members);
            let backward = ca.contains_cone(cb) == lb.members.is_superset(&la.members);
            if !(forward && backward) {
                violations.push((a, b));
            }
        }
    }
    CorrespondenceCheck {
        cones: rows.len(),
        distinct_loci,
        pairs_checked,
        violations,
    }
}

/// All `2^k` subsets of the generators with their sums, ordered by
/// `v >= w` iff `X^ss(v) ⊆ X^ss(w)`.
///
/// Subsets are kept as bitmasks since distinct subsets may share a sum. The
/// relation is stored once per distinct locus.
#[derive(Clone, Debug, Serialize)]
pub struct SubsetSumPoset {
    generators: Vec<IntVector>,
    sums: Vec<IntVector>,
    class_of: Vec<usize>,
    classes: Vec<SemistableLocus>,
    /// `relation[a][b]`: locus class `a` is contained in class `b`.
    relation: Vec<Vec<bool>>,
}

impl SubsetSumPoset {
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Number of subsets, `2^k`.
    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Generator indices in the subset `mask`.
    pub fn subset(&self, mask: usize) -> Vec<usize> {
        (0..self.generators.len()).filter(|i| mask >> i & 1 == 1).collect()
    }

    pub fn sum(&self, mask: usize) -> &IntVector {
        &self.sums[mask]
    }

    pub fn locus(&self, mask: usize) -> &SemistableLocus {
        &self.classes[self.class_of[mask]]
    }

    /// The distinct loci occurring among subset sums.
    pub fn loci(&self) -> &[SemistableLocus] {
        &self.classes
    }

    /// `v >= w`.
    pub fn geq(&self, v: usize, w: usize) -> bool {
        self.relation[self.class_of[v]][self.class_of[w]]
    }
}

/// Lemma cone versus definitional GIT cone for one subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetComparison {
    pub subset: Vec<usize>,
    pub sum: IntVector,
    pub lemma_cone: Cone,
    pub definitional_cone: Cone,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub rows: Vec<PosetComparison>,
}

impl EquivalenceReport {
    pub fn agreements(&self) -> usize {
        self.rows.iter().filter(|r| r.agrees).count()
    }

    pub fn mismatches(&self) -> Vec<&PosetComparison> {
        self.rows.iter().filter(|r| !r.agrees).collect()
    }
}

/// A row of a published correspondence table: weights said to share one
/// semistable locus, and the generators of the cone said to correspond.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitClaim {
    pub weights: Vec<IntVector>,
    pub cone: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    ConeMismatch {
        weight: IntVector,
        claimed: Cone,
        definitional: Cone,
    },
    LocusMismatch {
        first: IntVector,
        second: IntVector,
        only_in_first: Vec<usize>,
        only_in_second: Vec<usize>,
    },
    OutsideWeightCone {
        weight: IntVector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimAudit {
    pub claim: GitClaim,
    pub definitional_cone: Option<Cone>,
    pub discrepancies: Vec<Discrepancy>,
}

impl ClaimAudit {
    pub fn matches(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub(crate) fn locus_mismatch(
    first: &IntVector,
    a: &SemistableLocus,
    second: &IntVector,
    b: &SemistableLocus,
) -> Option<Discrepancy> {
    if a == b {
        return None;
    }
    Some(Discrepancy::LocusMismatch {
        first: first.clone(),
        second: second.clone(),
        only_in_first: a.members.difference(&b.members).copied().collect(),
        only_in_second: b.members.difference(&a.members).copied().collect(),
    })
}

impl AffineToricData {
    /// Requires `sigma` pointed, so that `σ∨` is full-dimensional.
    pub fn new(sigma: Cone) -> Result<Self> {
        if !sigma.is_pointed() {
            return Err(Error::Invalid("the cone σ must be pointed".into()));
        }
        let sigma_dual = sigma.dual();
        let hilbert = hilbert_basis(&sigma_dual).ok();
        let generators = match &hilbert {
            Some(hb) => hb.elements().to_vec(),
            None => monoid_generators(&sigma_dual),
        };
        let orbit_cones = sigma_dual
            .faces()
            .into_iter()
            .map(|face| {
                let generator_indices = (0..generators.len())
                    .filter(|&i| face.cone.contains_int(&generators[i]))
                    .collect();
                OrbitCone {
                    face,
                    generator_indices,
                }
            })
            .collect();
        Ok(AffineToricData {
            sigma,
            sigma_dual,
            hilbert,
            generators,
            orbit_cones,
        })
    }

    pub fn from_rays(rank: usize, rays: &[IntVector]) -> Result<Self> {
        Self::new(Cone::from_generators(rank, rays)?)
    }

    pub fn rank(&self) -> usize {
        self.sigma.rank()
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn sigma_dual(&self) -> &Cone {
        &self.sigma_dual
    }

    /// The Hilbert basis of `σ∨ ∩ M`; absent when `σ∨` has lineality.
    pub fn hilbert_basis(&self) -> Option<&HilbertBasis> {
        self.hilbert.as_ref()
    }

    /// Monoid generators of `σ∨ ∩ M`: the Hilbert basis if there is one.
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn orbit_cones(&self) -> &[OrbitCone] {
        &self.orbit_cones
    }

    pub fn orbit_monoid(&self, o: &OrbitCone) -> Vec<IntVector> {
        o.generator_indices.iter().map(|&i| self.generators[i].clone()).collect()
    }

    /// Lattice generated by the orbit monoid, as rows in lower Hermite form.
    pub fn orbit_lattice(&self, o: &OrbitCone) -> IntMatrix {
        let basis = canonical_lattice_basis(&self.orbit_monoid(o), self.rank());
        IntMatrix::from_rows(&basis, self.rank())
    }

    /// The cone generated by all degrees of nonzero functions.
    pub fn weight_cone(&self) -> Cone {
        Cone::from_generators(self.rank(), &self.generators).expect("rank already validated")
    }

    fn check_weight(&self, u: &IntVector) -> Result<()> {
        if u.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: u.dim(),
            });
        }
        Ok(())
    }

    /// Orbit cones containing `u`; empty outside the weight cone.
    pub fn semistable_locus(&self, u: &IntVector) -> Result<SemistableLocus> {
        self.check_weight(u)?;
        Ok(SemistableLocus::new(
            (0..self.orbit_cones.len())
                .filter(|&i| self.orbit_cones[i].cone().contains_int(u))
                .collect(),
        ))
    }

    /// Intersection of all orbit cones containing `u`.
    pub fn git_cone(&self, u: &IntVector) -> Result<Cone> {
        self.check_weight(u)?;
        if !self.sigma_dual.contains_int(u) {
            return Err(Error::EmptyGitClass);
        }
        let mut cone = self.sigma_dual.clone();
        for o in &self.orbit_cones {
            if o.cone().contains_int(u) && !o.cone().contains_cone(&cone) {
                cone = cone.intersect(o.cone())?;
            }
        }
        Ok(cone)
    }

    /// GIT cones and loci sampled at a relative-interior point of every face.
    pub fn git_fan(&self) -> GitData {
        let mut by_cone: BTreeMap<Cone, GitRow> = BTreeMap::new();
        for o in &self.orbit_cones {
            let u = o.cone().relative_interior_point();
            let cone = self.git_cone(&u).expect("face point lies in σ∨");
            let locus = self.semistable_locus(&u).expect("rank checked");
            by_cone.entry(cone.clone()).or_insert(GitRow {
                cone,
                locus,
                sample: u,
            });
        }
        let mut rows: Vec<GitRow> = by_cone.into_values().collect();
        rows.sort_by(|a, b| a.cone.table_key().cmp(&b.cone.table_key()));
        GitData {
            orbit_cones: self.orbit_cones.clone(),
            orbit_lattices: self.orbit_cones.iter().map(|o| self.orbit_lattice(o)).collect(),
            quasi_fan: rows.iter().any(|r| !r.cone.is_pointed()),
            rows,
        }
    }

    pub fn subset_sum_poset(&self) -> Result<SubsetSumPoset> {
        let k = self.generators.len();
        if k > MAX_POSET_GENERATORS {
            return Err(Error::PosetTooLarge(k));
        }
        let n = self.rank();
        let mut sums = Vec::with_capacity(1 << k);
        for mask in 0..1usize << k {
            let s = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .fold(IntVector::zeros(n), |acc, i| acc.add(&self.generators[i]));
            sums.push(s);
        }
        let mut index: BTreeMap<SemistableLocus, usize> = BTreeMap::new();
        let mut classes = Vec::new();
        let mut class_of = Vec::with_capacity(sums.len());
        for s in &sums {
            let locus = self.semistable_locus(s)?;
            let id = *index.entry(locus.clone()).or_insert_with(|| {
                classes.push(locus);
                classes.len() - 1
            });
            class_of.push(id);
        }
        let relation = classes
            .iter()
            .map(|a| classes.iter().map(|b| a.is_subset(b)).collect())
            .collect();
        Ok(SubsetSumPoset {
            generators: self.generators.clone(),
            sums,
            class_of,
            classes,
            relation,
        })
    }

    /// The cone generated by the generators `u_i` with `v >= u_i`.
    pub fn git_cone_via_poset(&self, poset: &SubsetSumPoset, mask: usize) -> Cone {
        let below: Vec<IntVector> = (0..self.generators.len())
            .filter(|&i| poset.geq(mask, 1 << i))
            .map(|i| self.generators[i].clone())
            .collect();
        Cone::from_generators(self.rank(), &below).expect("rank already validated")
    }

    /// Compares the lemma cone with the definitional GIT cone on every subset.
    pub fn git_equivalence_report(&self) -> Result<EquivalenceReport> {
        let poset = self.subset_sum_poset()?;
        let mut rows = Vec::with_capacity(poset.len());
        for mask in 0..poset.len() {
            let lemma_cone = self.git_cone_via_poset(&poset, mask);
            let definitional_cone = self.git_cone(poset.sum(mask))?;
            rows.push(PosetComparison {
                subset: poset.subset(mask),
                sum: poset.sum(mask).clone(),
                agrees: lemma_cone == definitional_cone,
                lemma_cone,
                definitional_cone,
            });
        }
        Ok(EquivalenceReport { rows })
    }

    /// Checks table rows against the definitional values. The first weight
    /// of each claim is the one whose GIT cone is compared.
    pub fn audit_claims(&self, claims: &[GitClaim]) -> Result<Vec<ClaimAudit>> {
        claims.iter().map(|c| self.audit_claim(c)).collect()
    }

    fn audit_claim(&self, claim: &GitClaim) -> Result<ClaimAudit> {
        let mut discrepancies = Vec::new();
        let Some(first) = claim.weights.first() else {
            return Err(Error::Invalid("claim without weights".into()));
        };
        let claimed = Cone::from_generators(self.rank(), &claim.cone)?;
        let definitional_cone = match self.git_cone(first) {
            Ok(c) => Some(c),
            Err(Error::EmptyGitClass) => None,
            Err(e) => return Err(e),
        };
        match &definitional_cone {
            Some(d) if *d != claimed => discrepancies.push(Discrepancy::ConeMismatch {
                weight: first.clone(),
                claimed,
                definitional: d.clone(),
            }),
            Some(_) => {}
            None => discrepancies.push(Discrepancy::OutsideWeightCone {
                weight: first.clone(),
            }),
        }
        let first_locus = self.semistable_locus(first)?;
        for w in &claim.weights[1..] {
            let locus = self.semistable_locus(w)?;
            discrepancies.extend(locus_mismatch(first, &first_locus, w, &locus));
        }
        Ok(ClaimAudit {
            claim: claim.clone(),
            definitional_cone,
            discrepancies,
        })
    }
}
