//! Sufficient conditions for structural instability and strong structural
//! stability. Neither criterion ever returns `Fails`.

use serde::Serialize;

use crate::error::Result;
use crate::verdict::{Criterion, Status, Verdict};

use super::{exponent_estimates, gated, Analysis, ExponentEstimates};

fn stability_notes(analysis: &Analysis) -> Result<Vec<String>> {
    let mut notes = analysis.dissipative_gate()?;
    notes.extend(analysis.require(&analysis.delta_prime, "delta_prime", true)?);
    Ok(notes)
}

fn evidence(e: &ExponentEstimates) -> Vec<f64> {
    e.all().iter().map(|x| x.numeric.unwrap_or(f64::NAN)).collect()
}

fn sufficient(status: Status) -> Status {
    if status == Status::Holds {
        Status::Holds
    } else {
        Status::Undetermined
    }
}

/// Forward exponent over `k ≥ 0` below 1 and backward exponent over `k ≤ 0`
/// above 1. Values: the six numeric exponents in [`ExponentEstimates::all`]
/// order.
pub fn structural_instability(analysis: &Analysis) -> Result<Verdict> {
    let notes = stability_notes(analysis)?;
    let e = exponent_estimates(analysis)?;
    let status = sufficient(e.forward_sup_nonneg.below_one.and(e.backward_inf_nonpos.above_one));
    let v = Verdict::new(Criterion::StructuralInstability, status)
        .with_values(evidence(&e))
        .with_tail_model(e.note.clone());
    Ok(gated(v, notes))
}

/// `contracting`, `expanding` or `split`, tried in that order.
pub fn strong_structural_stability(analysis: &Analysis) -> Result<Verdict> {
    let notes = stability_notes(analysis)?;
    let e = exponent_estimates(analysis)?;
    let conditions = [
        ("contracting", e.forward_sup_all.below_one),
        ("expanding", e.forward_inf_all.above_one),
        ("split", e.backward_sup_nonpos.below_one.and(e.reverse_inf_nonneg.above_one)),
    ];
    let hit = conditions.iter().find(|(_, s)| *s == Status::Holds);
    let mut v = Verdict::new(Criterion::StrongStructuralStability, sufficient(hit.map_or(Status::Undetermined, |h| h.1)))
        .with_values(evidence(&e))
        .with_tail_model(e.note.clone());
    if let Some((tag, _)) = hit {
        v = v.with_condition(*tag);
    }
    Ok(gated(v, notes))
}

/// Labelled consequences of the stability verdicts. Shadowing itself is
/// never decided here.
#[derive(Debug, Clone, Serialize)]
pub struct ShadowingReport {
    /// `inf_{n≥1} a_{−n} = 0` (positive expansivity of `C_φ`).
    pub hypothesis: Status,
    pub strong_structural_stability: Verdict,
    pub structural_instability: Verdict,
    /// Strong structural stability is concluded.
    pub sss_concluded: bool,
    /// Shadowing is equivalent to strong structural stability here.
    pub equivalence_applies: bool,
    /// Instability holds under the hypothesis, so shadowing is absent.
    pub shadowing_absent: bool,
    pub implications: Vec<String>,
}

pub fn shadowing_report(analysis: &Analysis) -> Result<ShadowingReport> {
    let hypothesis = super::positively_expansive_dissipative(analysis)?.status;
    let sss = strong_structural_stability(analysis)?;
    let instability = structural_instability(analysis)?;
    let sss_concluded = sss.status == Status::Holds;
    let equivalence_applies = hypothesis == Status::Holds;
    let shadowing_absent = equivalence_applies && instability.status == Status::Holds;
    let mut implications = Vec::new();
    if sss_concluded {
        implications.push(format!(
            "strong structural stability concluded ({})",
            sss.condition.as_deref().unwrap_or("")
        ));
    }
    match hypothesis {
        Status::Holds => implications
            .push("positively expansive generator: shadowing <=> strong structural stability".into()),
        Status::Fails => implications.push("positive expansivity fails: equivalence not applicable".into()),
        Status::Undetermined => implications.push("positive expansivity undetermined: equivalence not established".into()),
    }
    if sss_concluded && equivalence_applies {
        implications.push("shadowing follows from the equivalence".into());
    }
    if instability.status == Status::Holds {
        implications.push("not structurally stable".into());
    }
    if shadowing_absent {
        implications.push("shadowing absent by contrapositive of the equivalence".into());
    }
    Ok(ShadowingReport {
        hypothesis,
        strong_structural_stability: sss,
        structural_instability: instability,
        sss_concluded,
        equivalence_applies,
        shadowing_absent,
        implications,
    })
}
