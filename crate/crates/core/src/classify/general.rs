//! Criteria for arbitrary (atomic) systems.
//!
//! On an atomic space the quantifier over sets of finite positive measure
//! reduces to singletons: `μ(φ⁻ⁿ(A)) ≥ μ(φ⁻ⁿ{a})` for `a ∈ A`, and
//! `Φ⁻¹(1/μₙ) → 0` exactly when `μₙ → ∞`. Atoms outside the window repeat
//! the orbit behaviour of window atoms once the window spans a full period
//! of the weight rule under the eventual shift.

use crate::error::{Error, Result};
use crate::space::{AtomSet, WeightRule};
use crate::system::Direction;
use crate::tail::TailModel;
use crate::verdict::{Criterion, Status, Verdict, Witness};

use super::{gated, Analysis};

/// Window length needed for every orbit class to have a representative.
fn period_span(analysis: &Analysis) -> i64 {
    let step = analysis.system.transform.eventual_shift().unwrap_or(0).abs().max(1);
    let m = match analysis.system.space.rule() {
        WeightRule::Interleaved { ratios, .. } => ratios.len() as i64,
        _ => 1,
    };
    step * m
}

fn tail_status(tail: Option<TailModel>, f: fn(&TailModel) -> Status) -> Status {
    tail.as_ref().map(f).unwrap_or(Status::Undetermined)
}

/// `Φ⁻¹(1/μ(φ^{∓n}(set)))` for `n = 1..=H`, stopping at the first
/// unavailable weight.
fn orbit_evidence(analysis: &Analysis, set: &AtomSet, direction: Direction) -> Vec<f64> {
    let sign = if direction == Direction::Backward { -1 } else { 1 };
    (1..=analysis.config.horizon as i64)
        .map_while(|n| analysis.system.ln_orbit_measure(set, sign * n).ok())
        .map(|ln_mu| analysis.system.phi.ln_inverse(-ln_mu).exp())
        .collect()
}

fn singleton_criterion(
    analysis: &Analysis,
    criterion: Criterion,
    per_atom: impl Fn(i64) -> (Status, String),
) -> Result<Verdict> {
    let mut notes: Vec<String> = analysis.bounded_gate()?.into_iter().collect();
    let (lo, hi) = analysis.system.space.window();
    if hi - lo + 1 < period_span(analysis) {
        notes.push(format!("window shorter than the orbit period {}", period_span(analysis)));
    }
    let mut status = Status::Holds;
    let mut witness = None;
    let mut model = None;
    // atom 0 first so it is the preferred witness
    let order = std::iter::once(0).filter(|&a| analysis.system.space.contains(a)).chain((lo..=hi).filter(|&a| a != 0));
    for a in order {
        let (s, m) = per_atom(a);
        if model.is_none() {
            model = Some(m.clone());
        }
        if s == Status::Fails && witness.is_none() {
            witness = Some(a);
            model = Some(m);
        }
        status = status.and(s);
    }
    let probe = witness.unwrap_or(if analysis.system.space.contains(0) { 0 } else { lo });
    let backward = crate::space::atoms(&[probe]);
    let mut v = Verdict::new(criterion, status)
        .with_values(orbit_evidence(analysis, &backward, Direction::Backward))
        .with_tail_model(model.unwrap_or_default());
    if let (Status::Fails, Some(a)) = (status, witness) {
        v = v.with_witness(Witness::Atom { atom: a });
    }
    Ok(gated(v, notes))
}

fn describe(t: Option<TailModel>) -> String {
    t.map(|t| t.describe()).unwrap_or_else(|| "none".into())
}

/// `inf_{n≥1} Φ⁻¹(1/μ(φ⁻ⁿ{a})) = 0` for every atom `a`.
pub fn positively_expansive_general(analysis: &Analysis) -> Result<Verdict> {
    singleton_criterion(analysis, Criterion::PositiveExpansivityGeneral, |a| {
        let t = analysis.system.orbit_tail(a, Direction::Backward);
        (tail_status(t, TailModel::grows), format!("backward: {}", describe(t)))
    })
}

/// `inf_{n∈ℤ} Φ⁻¹(1/μ(φ⁻ⁿ{a})) = 0` for every atom `a`.
pub fn expansive_general(analysis: &Analysis) -> Result<Verdict> {
    singleton_criterion(analysis, Criterion::ExpansivityGeneral, |a| {
        let b = analysis.system.orbit_tail(a, Direction::Backward);
        let f = analysis.system.orbit_tail(a, Direction::Forward);
        (
            tail_status(b, TailModel::grows).or(tail_status(f, TailModel::grows)),
            format!("backward: {}, forward: {}", describe(b), describe(f)),
        )
    })
}

/// Uniform criteria checked on a finite family only. A member whose orbit
/// measures stay bounded refutes uniformity; no finite family proves it, so
/// the best outcome without a dissipative structure is `Undetermined`. With
/// a structure the decision defers to the dissipative criterion.
///
/// `two_sided` selects uniform expansivity: each member must diverge along
/// its forward or its backward orbit.
pub fn uniform_general_heuristic(analysis: &Analysis, family: &[AtomSet], two_sided: bool) -> Result<Verdict> {
    let criterion = if two_sided {
        Criterion::UniformExpansivityGeneral
    } else {
        Criterion::UniformPositiveExpansivityGeneral
    };
    if family.is_empty() || family.iter().any(AtomSet::is_empty) {
        return Err(Error::EmptySet);
    }
    let mut notes: Vec<String> = analysis.bounded_gate()?.into_iter().collect();
    notes.extend(analysis.require(&analysis.delta2, "delta2", false)?);

    if let Some(s) = &analysis.structure {
        if s.certificate.status == Status::Holds {
            let inner = if two_sided {
                super::uniformly_expansive_dissipative(analysis)?
            } else {
                super::uniformly_positively_expansive_dissipative(analysis)?
            };
            let mut v = Verdict::new(criterion, inner.status)
                .with_values(inner.values)
                .with_note(format!("deferred to {}", inner.criterion.tag()));
            v.condition = inner.condition;
            v.witness = inner.witness;
            v.tail_model = inner.tail_model;
            if !inner.note.is_empty() {
                v.note = format!("{}; {}", v.note, inner.note);
            }
            return Ok(v);
        }
    }

    let mut status = Status::Undetermined;
    let mut witness = None;
    let mut models = Vec::new();
    for f in family {
        let b = analysis.system.set_orbit_tail(f, Direction::Backward);
        let mut s = tail_status(b, TailModel::grows);
        let mut m = format!("backward: {}", describe(b));
        if two_sided {
            let fw = analysis.system.set_orbit_tail(f, Direction::Forward);
            s = s.or(tail_status(fw, TailModel::grows));
            m = format!("{m}, forward: {}", describe(fw));
        }
        models.push(m);
        if s == Status::Fails {
            status = Status::Fails;
            witness = Some(f.clone());
            break;
        }
    }
    let probe = witness.clone().unwrap_or_else(|| family[0].clone());
    let mut v = Verdict::new(criterion, status)
        .with_values(orbit_evidence(analysis, &probe, Direction::Backward))
        .with_tail_model(models.last().cloned().unwrap_or_default());
    match witness {
        Some(f) => v = v.with_witness(Witness::Set { atoms: f.into_iter().collect() }),
        None => v = v.with_note("uniformity over all sets has no finite certificate"),
    }
    Ok(gated(v, notes))
}
