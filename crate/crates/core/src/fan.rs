//! Chamber fans of finite cone arrangements.
//!
//! For a finite collection `C` of cones, `λ(v)` is the intersection of the
//! members containing `v`. Downgraded GIT fans and toric quotient fans are
//! both sets of the form `{λ(v)}`. Membership of `v` in each member depends
//! only on the signs of `v` against the members' facet normals and
//! equations, so `λ` is constant on the relative interior of every face of
//! that hyperplane arrangement; evaluating `λ` once per face finds all
//! values.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::IntVector;
use crate::cone::Cone;
use crate::error::Result;

/// `λ(v)`, or `None` when no member contains `v`.
pub fn chamber(cones: &[Cone], v: &IntVector) -> Result<Option<Cone>> {
    let mut out: Option<Cone> = None;
    for c in cones.iter().filter(|c| c.contains_int(v)) {
        out = Some(match out {
            None => c.clone(),
            Some(acc) if c.contains_cone(&acc) => acc,
            Some(acc) => acc.intersect(c)?,
        });
    }
    Ok(out)
}

/// All distinct `λ(v)` for `v` in the union of `cones`, ordered by
/// dimension and rays.
pub fn chamber_fan(cones: &[Cone]) -> Result<Vec<Cone>> {
    let mut chambers = BTreeSet::new();
    for k in arrangement_faces(cones)? {
        if let Some(c) = chamber(cones, &k.relative_interior_point())? {
            chambers.insert(c);
        }
    }
    let mut out: Vec<Cone> = chambers.into_iter().collect();
    out.sort_by(|a, b| a.table_key().cmp(&b.table_key()));
    Ok(out)
}

/// Whether the union of `cones` contains `target`.
pub fn covers(cones: &[Cone], target: &Cone) -> Result<bool> {
    let mut all = cones.to_vec();
    all.push(target.clone());
    for k in arrangement_faces(&all)? {
        if !target.contains_cone(&k) {
            continue;
        }
        let p = k.relative_interior_point();
        if !cones.iter().any(|c| c.contains_int(&p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Faces of the arrangement cut out by all facet and equation hyperplanes of
/// `cones`, restricted to the members.
fn arrangement_faces(cones: &[Cone]) -> Result<BTreeSet<Cone>> {
    let hyperplanes: BTreeSet<IntVector> = cones
        .iter()
        .flat_map(|c| c.facets().iter().chain(c.equations()))
        .map(|h| {
            if h.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                h.neg()
            } else {
                h.clone()
            }
        })
        .collect();
    let mut cells: BTreeSet<Cone> = cones.iter().cloned().collect();
    for h in &hyperplanes {
        let mut next = BTreeSet::new();
        for k in &cells {
            let values: Vec<_> = k.generators().iter().map(|g| h.dot(g)).collect();
            if values.iter().all(|x| !x.is_negative()) || values.iter().all(|x| !x.is_positive()) {
                // the hyperplane supports `k`: only the face on it is new
                next.insert(k.clone());
                let eq = [h.clone()];
                next.insert(Cone::from_inequalities(k.rank(), k.facets(), &[k.equations(), &eq].concat())?);
                continue;
            }
            let eqs = k.equations();
            let mut plus = k.facets().to_vec();
            plus.push(h.clone());
            let mut minus = k.facets().to_vec();
            minus.push(h.neg());
            next.insert(Cone::from_inequalities(k.rank(), &plus, eqs)?);
            next.insert(Cone::from_inequalities(k.rank(), &minus, eqs)?);
            next.insert(Cone::from_inequalities(k.rank(), k.facets(), &[eqs, std::slice::from_ref(h)].concat())?);
        }
        cells = next;
    }
    Ok(cells)
}

/// Pairwise intersections are common faces and every face of a member is a
/// member.
pub fn is_fan(cones: &[Cone]) -> bool {
    let set: BTreeSet<&Cone> = cones.iter().collect();
    let closed_under_faces = cones
        .iter()
        .all(|c| c.faces().iter().all(|f| set.contains(&f.cone)));
    closed_under_faces
        && cones.iter().enumerate().all(|(i, a)| {
            cones[i + 1..].iter().all(|b| {
                a.intersect(b)
                    .map(|c| c.is_face_of(a) && c.is_face_of(b))
                    .unwrap_or(false)
            })
        })
}
