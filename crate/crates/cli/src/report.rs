//! Command pipelines. Each produces a JSON document and a markdown rendering
//! of the same content, plus whether every verification held.

use std::fmt::Write as _;

use gitkit::downgrade::{Downgrade, DowngradeDiscrepancy};
use gitkit::fan::is_fan;
use gitkit::ppdiv::{check_proper, downgrade_ppdivisor, verify_reconstruction, Verdict};
use gitkit::toric_git::{AffineToricData, Discrepancy};
use gitkit::{Cone, IntVector, SemistableLocus, SubtorusData};
use serde_json::{json, Value};

use crate::input::ProblemInput;
use crate::Failure;

pub struct Report {
    pub json: Value,
    pub markdown: String,
    /// Every verification in the report held.
    pub passed: bool,
}

fn toric(p: &ProblemInput) -> Result<AffineToricData, Failure> {
    let sigma = Cone::from_generators(p.rank, &p.cone_rays).map_err(|e| Failure::from_core(e, "/cone_rays"))?;
    AffineToricData::new(sigma).map_err(|e| Failure::from_core(e, "/cone_rays"))
}

fn subtorus(p: &ProblemInput) -> Result<SubtorusData, Failure> {
    SubtorusData::analyze(&p.embedding()?).map_err(|e| Failure::from_core(e, "/subtorus_embedding"))
}

fn locus_text(l: &SemistableLocus) -> String {
    let names: Vec<String> = l.members().iter().map(|i| format!("F{i}")).collect();
    format!("{{{}}}", names.join(", "))
}

fn vectors_text(vs: &[IntVector]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn indices(is: &[usize]) -> String {
    is.iter().map(|i| format!("F{i}")).collect::<Vec<_>>().join(", ")
}

fn git_note(d: &Discrepancy) -> String {
    match d {
        Discrepancy::ConeMismatch { weight, definitional, .. } => {
            format!("λ({weight}) is {definitional}")
        }
        Discrepancy::LocusMismatch { first, second, only_in_first, only_in_second } => format!(
            "X^ss({first}) ≠ X^ss({second}): only in first {{{}}}, only in second {{{}}}",
            indices(only_in_first),
            indices(only_in_second)
        ),
        Discrepancy::OutsideWeightCone { weight } => format!("{weight} lies outside ω"),
    }
}

fn downgrade_note(d: &DowngradeDiscrepancy) -> String {
    match d {
        DowngradeDiscrepancy::ConeMismatch { definitional, .. } => format!("cone is {definitional}"),
        DowngradeDiscrepancy::TermOffRay { term, image } => format!("term {term} maps to {image}"),
        DowngradeDiscrepancy::UnionMismatch { claimed, definitional } => {
            format!("union is {}, locus is {}", locus_text(claimed), locus_text(definitional))
        }
        DowngradeDiscrepancy::OutsideWeightCone => "weight lies outside i(ω)".to_string(),
    }
}

fn notes<T>(ds: &[T], note: fn(&T) -> String) -> String {
    if ds.is_empty() {
        "matches".to_string()
    } else {
        ds.iter().map(note).collect::<Vec<_>>().join("; ")
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}

pub fn hilbert(p: &ProblemInput) -> Result<Report, Failure> {
    let t = toric(p)?;
    let pointed = t.hilbert_basis().is_some();
    let mut md = String::from("# Hilbert basis\n\n");
    let _ = writeln!(md, "- σ = {}", t.sigma());
    let _ = writeln!(md, "- σ∨ = {}", t.sigma_dual());
    let kind = if pointed { "Hilbert basis" } else { "monoid generators (σ∨ has lineality)" };
    let _ = writeln!(md, "- {kind}: {}\n", vectors_text(t.generators()));
    Ok(Report {
        json: json!({
            "input": p,
            "sigma": t.sigma(),
            "sigma_dual": t.sigma_dual(),
            "pointed": pointed,
            "hilbert_basis": t.generators(),
        }),
        markdown: md,
        passed: true,
    })
}

fn orbit_rows(t: &AffineToricData) -> Vec<Value> {
    t.orbit_cones()
        .iter()
        .enumerate()
        .map(|(i, o)| {
            json!({
                "id": format!("F{i}"),
                "cone": o.cone(),
                "monoid_generators": t.orbit_monoid(o),
                "lattice": t.orbit_lattice(o),
            })
        })
        .collect()
}

fn orbit_table(md: &mut String, t: &AffineToricData) {
    md.push_str("| id | orbit cone | dim | monoid generators |\n|---|---|---|---|\n");
    for (i, o) in t.orbit_cones().iter().enumerate() {
        let _ = writeln!(md, "| F{i} | {} | {} | {} |", o.cone(), o.cone().dim(), vectors_text(&t.orbit_monoid(o)));
    }
    md.push('\n');
}

pub fn orbit_cones(p: &ProblemInput) -> Result<Report, Failure> {
    let t = toric(p)?;
    let mut md = String::from("# Orbit cones\n\n");
    orbit_table(&mut md, &t);
    Ok(Report {
        json: json!({ "input": p, "orbit_cones": orbit_rows(&t) }),
        markdown: md,
        passed: true,
    })
}

pub fn git_fan(p: &ProblemInput) -> Result<Report, Failure> {
    let t = toric(p)?;
    let data = t.git_fan();
    let check = data.check_correspondence();
    let cones: Vec<Cone> = data.rows.iter().map(|r| r.cone.clone()).collect();
    let fan_ok = data.quasi_fan || is_fan(&cones);
    let poset = match t.git_equivalence_report() {
        Ok(r) => json!({
            "subsets": r.rows.len(),
            "agreements": r.agreements(),
            "mismatches": r.mismatches(),
        }),
        Err(e) => json!({ "skipped": e.to_string() }),
    };
    let audits = t.audit_claims(&p.git_claims).map_err(|e| Failure::from_core(e, "/claims/git"))?;

    let mut md = String::from("# GIT fan\n\n## Orbit cones\n\n");
    orbit_table(&mut md, &t);
    md.push_str("## Correspondence\n\n| semistable locus | | GIT cone |\n|---|---|---|\n");
    for r in &data.rows {
        let _ = writeln!(md, "| X^ss({}) = {} | ↔ | {} |", r.sample, locus_text(&r.locus), r.cone);
    }
    let _ = writeln!(
        md,
        "\nOrder-reversing bijection {}: {} cones, {} distinct loci, {} pairs checked.",
        verdict(check.holds()),
        check.cones,
        check.distinct_loci,
        check.pairs_checked
    );
    if let Some(n) = poset.get("agreements") {
        let _ = writeln!(md, "Poset cones agree with GIT cones on {n} of {} subsets.", poset["subsets"]);
    }
    if !audits.is_empty() {
        md.push_str("\n## Claims\n\n| weights | claimed cone | definitional cone | notes |\n|---|---|---|---|\n");
        for a in &audits {
            let claimed = Cone::from_generators(p.rank, &a.claim.cone).map_err(|e| Failure::from_core(e, "/claims/git"))?;
            let def = a.definitional_cone.as_ref().map_or("none".to_string(), ToString::to_string);
            let notes = notes(&a.discrepancies, git_note);
            let _ = writeln!(md, "| {} | {claimed} | {def} | {notes} |", vectors_text(&a.claim.weights));
        }
    }
    Ok(Report {
        json: json!({
            "input": p,
            "hilbert_basis": t.generators(),
            "orbit_cones": orbit_rows(&t),
            "git_table": data.rows,
            "quasi_fan": data.quasi_fan,
            "correspondence": check,
            "poset_cross_check": poset,
            "claims": audits,
        }),
        markdown: md,
        passed: check.holds() && fan_ok,
    })
}

pub fn downgrade_git_fan(p: &ProblemInput) -> Result<Report, Failure> {
    let t = toric(p)?;
    let s = subtorus(p)?;
    let d = Downgrade::new(&t, &s).map_err(|e| Failure::from_core(e, "/subtorus_embedding"))?;
    let data = d.git_fan().map_err(|e| Failure::from_core(e, ""))?;
    let check = data.check_correspondence();
    let cert = d.check_effective_quotient_action();
    let audits = d
        .audit_claims(&p.downgrade_claims)
        .map_err(|e| Failure::from_core(e, "/claims/downgrade"))?;
    let unions_ok = data.rows.iter().all(|r| r.union_agrees);

    let mut md = String::from("# Downgraded GIT fan\n\n");
    let _ = writeln!(md, "- weight cone i(ω) = {}", data.weight_cone);
    let _ = writeln!(md, "- M'' = ker i spanned by {}", vectors_text(&s.kernel().col_vectors()));
    let _ = writeln!(md, "- quotient torus acts effectively: {}\n", cert.effective);
    md.push_str("| semistable locus | union of big-torus loci | | GIT cone |\n|---|---|---|---|\n");
    for r in &data.rows {
        let terms: Vec<String> = r.union.iter().map(|u| format!("X^ss({})", u.weight)).collect();
        let _ = writeln!(
            md,
            "| X^ss({}) = {} | {} | ↔ | {} |",
            r.sample,
            locus_text(&r.locus),
            if terms.is_empty() { "∅".to_string() } else { terms.join(" ∪ ") },
            r.cone
        );
    }
    let _ = writeln!(
        md,
        "\nOrder-reversing bijection {}; union formula {}.",
        verdict(check.holds()),
        verdict(unions_ok)
    );
    if !audits.is_empty() {
        md.push_str("\n## Claims\n\n| weight | claimed union | notes |\n|---|---|---|\n");
        for a in &audits {
            let notes = notes(&a.discrepancies, downgrade_note);
            let _ = writeln!(md, "| {} | {} | {notes} |", a.claim.weight, vectors_text(&a.claim.union));
        }
    }
    Ok(Report {
        json: json!({
            "input": p,
            "subtorus": s,
            "weight_cone": data.weight_cone,
            "orbit_cone_images": data.orbit_cones,
            "git_table": data.rows,
            "quasi_fan": data.quasi_fan,
            "correspondence": check,
            "effectiveness": cert,
            "claims": audits,
        }),
        markdown: md,
        passed: check.holds() && unions_ok,
    })
}

fn ppdiv_markdown(md: &mut String, d: &gitkit::PolyhedralDivisor) {
    let _ = writeln!(md, "- base: rank {} fan with {} cones, complete: {}", d.base().rank(), d.base().cones().len(), d.base().is_complete());
    let _ = writeln!(md, "- tail: {}\n", d.tail());
    md.push_str("| ray | generator | coefficient vertices |\n|---|---|---|\n");
    for r in d.base().rays() {
        let vertices = d.coefficient(&r.label).map_or(String::new(), |c| {
            c.vertices().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        });
        let _ = writeln!(md, "| {} | {} | {vertices} |", r.label, r.generator);
    }
    md.push('\n');
}

pub fn ppdiv(p: &ProblemInput) -> Result<Report, Failure> {
    let t = toric(p)?;
    let s = subtorus(p)?;
    let d = downgrade_ppdivisor(&t, &s).map_err(|e| Failure::from_core(e, "/subtorus_embedding"))?;
    let proper = check_proper(&d).map_err(|e| Failure::from_core(e, ""))?;
    let mut md = String::from("# Polyhedral divisor\n\n");
    ppdiv_markdown(&mut md, &d);
    let _ = writeln!(md, "Properness: {:?}.", proper.verdict);
    Ok(Report {
        json: json!({ "input": p, "subtorus": s, "ppdivisor": d, "proper": proper }),
        markdown: md,
        passed: proper.verdict != Verdict::NotProper,
    })
}

pub fn verify(p: &ProblemInput, box_bound: u64) -> Result<Report, Failure> {
    let t = toric(p)?;
    let s = subtorus(p)?;
    let d = downgrade_ppdivisor(&t, &s).map_err(|e| Failure::from_core(e, "/subtorus_embedding"))?;
    let report = verify_reconstruction(&t, &s, &d, box_bound).map_err(|e| Failure::from_core(e, ""))?;
    let mismatches = report.mismatches().len();
    let truncated = report.fibers.iter().filter(|f| f.truncated).count();
    let mut md = String::from("# Reconstruction\n\n");
    ppdiv_markdown(&mut md, &d);
    md.push_str("| weight | fiber | sections | truncated |\n|---|---|---|---|\n");
    for f in &report.fibers {
        let _ = writeln!(md, "| {} | {} | {} | {} |", f.weight, f.fiber, f.sections, f.truncated);
    }
    let _ = writeln!(
        md,
        "\n{} fibers with |v_j| <= {box_bound}, {mismatches} mismatches, {truncated} truncated.",
        report.fibers.len()
    );
    Ok(Report {
        json: json!({
            "input": p,
            "ppdivisor": d,
            "box": box_bound,
            "fibers": report.fibers.len(),
            "mismatches": mismatches,
            "truncated": truncated,
            "reconstruction": report.fibers,
        }),
        markdown: md,
        passed: mismatches == 0,
    })
}

/// The fan to draw: the downgraded fan when an embedding is given.
pub fn fan_for_drawing(p: &ProblemInput) -> Result<(Vec<Cone>, usize, String), Failure> {
    let t = toric(p)?;
    if p.subtorus_embedding.is_some() {
        let s = subtorus(p)?;
        let d = Downgrade::new(&t, &s).map_err(|e| Failure::from_core(e, "/subtorus_embedding"))?;
        let data = d.git_fan().map_err(|e| Failure::from_core(e, ""))?;
        let cones = data.rows.into_iter().map(|r| r.cone).collect();
        Ok((cones, s.sub_rank(), format!("GIT fan of the rank {} subtorus", s.sub_rank())))
    } else {
        let cones = t.git_fan().rows.into_iter().map(|r| r.cone).collect();
        Ok((cones, t.rank(), format!("GIT fan of the rank {} torus", t.rank())))
    }
}

/// All reports that apply to the input, with their verdicts.
pub fn selfcheck(p: &ProblemInput, box_bound: u64) -> Result<Report, Failure> {
    let mut checks: Vec<(&str, bool)> = vec![("git-fan", git_fan(p)?.passed)];
    if p.subtorus_embedding.is_some() {
        checks.push(("downgrade git-fan", downgrade_git_fan(p)?.passed));
        match ppdiv(p) {
            Ok(r) => {
                checks.push(("downgrade ppdiv", r.passed));
                checks.push(("verify", verify(p, box_bound)?.passed));
            }
            // a non-effective quotient action has no pp-divisor to check
            Err(f) if f.code == 4 => {}
            Err(f) => return Err(f),
        }
    }
    let mut md = String::from("# Self-check\n\n");
    for (name, ok) in &checks {
        let _ = writeln!(md, "- [{}] {name}", if *ok { "PASS" } else { "FAIL" });
    }
    let passed = checks.iter().all(|(_, ok)| *ok);
    let results: Vec<Value> = checks.iter().map(|(n, ok)| json!({ "check": n, "passed": ok })).collect();
    Ok(Report {
        json: json!({ "input": p, "box": box_bound, "checks": results, "passed": passed }),
        markdown: md,
        passed,
    })
}
