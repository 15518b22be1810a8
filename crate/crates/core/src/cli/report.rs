//! JSON documents emitted by the commands. Key order is fixed by
//! `serde_json`'s sorted maps, so equal inputs give byte-identical output.

use serde_json::{json, Value};

use crate::adjoint::AdjointData;
use crate::arrangement::{Arrangement, InvariantBundle, SemiLattice};
use crate::cli::io::{arrangement_json, vector_json, ElemJson};
use crate::exactq::Degeneracy;
use crate::extension::{ClassificationReport, VerificationReport, Violation};
use crate::nbc::{CircuitCatalog, LabelSet};
use crate::restriction::RestrictionReport;

pub fn bundle_json(b: &InvariantBundle) -> Value {
    json!({
        "chi": b.chi.to_text(),
        "whitney": b.whitney.grid(),
        "whitneyText": b.whitney.to_text(),
        "cij": b.cij,
        "wPlus": b.w_plus,
        "W": b.whitney_second,
        "faces": b.faces,
        "r": b.regions,
        "doubly": b.doubly,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

pub fn invariants_json<F: ElemJson>(a: &Arrangement<F>, lattice: &SemiLattice<F>) -> Value {
    let b = InvariantBundle::from_lattice(lattice);
    merge(
        json!({
            "dim": a.dim(),
            "members": a.len(),
            "essential": a.is_essential(),
            "latticeSize": lattice.len(),
        }),
        bundle_json(&b),
    )
}

fn label_sets(sets: &[LabelSet]) -> Value {
    json!(sets.iter().map(|s| s.labels()).collect::<Vec<_>>())
}

pub fn nbc_json(order: &[usize], catalog: &CircuitCatalog, nbc: &[Vec<LabelSet>], w_plus: &[u64]) -> Value {
    let counts: Vec<usize> = nbc.iter().map(Vec::len).collect();
    let matches = counts.iter().zip(w_plus).all(|(&c, &w)| c as u64 == w);
    json!({
        "order": order,
        "circuits": label_sets(&catalog.circuits),
        "brokenCircuits": label_sets(&catalog.broken_circuits),
        "nbc": nbc.iter().map(|s| label_sets(s)).collect::<Vec<_>>(),
        "counts": counts,
        "wPlus": w_plus,
        "matches": matches,
    })
}

pub fn adjoint_json<F: ElemJson>(data: &AdjointData<F>) -> Value {
    let field = data.induced.field();
    merge(
        arrangement_json(&data.induced, Some(&data.provenance)),
        json!({
            "vertices": data.vertices.iter().map(|v| vector_json(field, v)).collect::<Vec<_>>(),
            "lines": data.lines.iter().map(|u| vector_json(field, u)).collect::<Vec<_>>(),
        }),
    )
}

fn degeneracy_json(d: Option<Degeneracy>) -> Value {
    match d {
        None => Value::Null,
        Some(Degeneracy::AmbientMember) => json!("ambient-member"),
        Some(Degeneracy::EmptyHyperplane) => json!("empty-hyperplane"),
    }
}

fn violations_json(v: &[Violation]) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn classification_json<F: ElemJson>(report: &ClassificationReport<F>, seed: u64) -> Value {
    let field = report.adjoint.induced.field();
    let strata: Vec<Value> = report
        .strata
        .iter()
        .map(|s| {
            merge(
                json!({
                    "index": s.index,
                    "dim": s.flat.dim(),
                    "labels": s.labels,
                    "representative": vector_json(field, &s.representative),
                    "degenerate": degeneracy_json(s.degenerate),
                    "class_id": s.class_id,
                }),
                bundle_json(&s.bundle),
            )
        })
        .collect();
    json!({
        "seed": seed,
        "dim": report.adjoint.induced.dim() - 1,
        "adjoint": adjoint_json(&report.adjoint),
        "strata": strata,
        "order": report.order,
        "classCount": report.class_count,
        "monotonicityViolations": violations_json(&report.monotonicity_violations),
    })
}

pub fn restrictions_json<F: ElemJson>(report: &RestrictionReport<F>, field: &F, seed: u64) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            merge(
                json!({
                    "index": e.index,
                    "dim": e.dim,
                    "labels": e.labels,
                    "representative": vector_json(field, &e.representative),
                    "degenerate": e.degenerate,
                    "members": e.members,
                    "latticeSize": e.lattice_size,
                    "constant": e.constant,
                }),
                bundle_json(&e.bundle),
            )
        })
        .collect();
    json!({
        "seed": seed,
        "strata": entries,
        "violations": violations_json(&report.violations),
    })
}

/// A restriction is a multi-arrangement; it is written with its inherited
/// labels and may repeat hyperplanes.
pub fn restriction_json<F: ElemJson>(r: &Arrangement<F>) -> Value {
    merge(arrangement_json(r, None), json!({ "labels": r.labels() }))
}

pub fn verification_json(kind: &str, seed: u64, trials: usize, report: &VerificationReport, violations: &[Violation]) -> Value {
    json!({
        "check": kind,
        "seed": seed,
        "trials": trials,
        "strata": report.strata,
        "comparisons": report.comparisons,
        "failures": report.failures,
        "violations": violations_json(violations),
        "passed": report.passed() && violations.is_empty(),
    })
}
