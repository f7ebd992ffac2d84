//! Criteria for dissipative systems of bounded distortion, phrased on the
//! generator sequence `a_k = Φ⁻¹(1/μ(φ^k(W)))`.
//!
//! `T₋` is the tail of `μ(φ^k(W))` as `k → −∞`, `T₊` as `k → +∞`.

use crate::error::Result;
use crate::tail::TailModel;
use crate::verdict::{Criterion, Status, Verdict, Witness};

use super::{gated, Analysis};

fn tails(analysis: &Analysis) -> Result<(Option<TailModel>, Option<TailModel>)> {
    let s = analysis.structure()?;
    Ok((s.backward_tail, s.forward_tail))
}

fn grows(t: Option<TailModel>) -> Status {
    t.map(|t| t.grows()).unwrap_or(Status::Undetermined)
}

fn decays(t: Option<TailModel>) -> Status {
    t.map(|t| t.decays()).unwrap_or(Status::Undetermined)
}

fn describe(back: Option<TailModel>, fwd: Option<TailModel>) -> String {
    let d = |t: Option<TailModel>| t.map(|t| t.describe()).unwrap_or_else(|| "none".into());
    format!("k->-inf: {}, k->+inf: {}", d(back), d(fwd))
}

fn tail_witness(side: &str, t: Option<TailModel>) -> Witness {
    Witness::Tail { side: side.into(), ratio: t.and_then(|t| t.ratio()) }
}

/// `a_k` for `k ∈ ks`, stopping at the first unavailable term.
fn a_values(analysis: &Analysis, ks: impl Iterator<Item = i64>) -> Result<Vec<f64>> {
    let h = analysis.config.horizon as i64;
    let seq = analysis.structure()?.ratio_sequence(&analysis.system, -h..=h)?;
    Ok(ks.map_while(|k| seq.a(k)).collect())
}

/// `inf_{n≥1} a_{−n} = 0`.
pub fn positively_expansive_dissipative(analysis: &Analysis) -> Result<Verdict> {
    let notes = analysis.dissipative_gate()?;
    let (back, fwd) = tails(analysis)?;
    let status = grows(back);
    let mut v = Verdict::new(Criterion::PositiveExpansivityDissipative, status)
        .with_tail_model(describe(back, fwd))
        .with_values(a_values(analysis, (1..=analysis.config.horizon as i64).map(|n| -n))?);
    if status == Status::Fails {
        v = v.with_witness(tail_witness("k->-inf", back));
    }
    Ok(gated(v, notes))
}

/// `inf_{n∈ℤ} a_n = 0`.
pub fn expansive_dissipative(analysis: &Analysis) -> Result<Verdict> {
    let notes = analysis.dissipative_gate()?;
    let (back, fwd) = tails(analysis)?;
    let (b, f) = (grows(back), grows(fwd));
    let status = b.or(f);
    let h = analysis.config.horizon as i64;
    let mut v = Verdict::new(Criterion::ExpansivityDissipative, status)
        .with_tail_model(describe(back, fwd))
        .with_values(a_values(analysis, -h..=h)?);
    if b == Status::Holds {
        v = v.with_condition("k->-inf");
    } else if f == Status::Holds {
        v = v.with_condition("k->+inf");
    } else if status == Status::Fails {
        v = v.with_witness(tail_witness("both", back));
    }
    Ok(gated(v, notes))
}

/// `lim_n a_{−n} = 0`.
pub fn uniformly_positively_expansive_dissipative(analysis: &Analysis) -> Result<Verdict> {
    let mut notes = analysis.dissipative_gate()?;
    notes.extend(analysis.require(&analysis.delta2, "delta2", false)?);
    let (back, fwd) = tails(analysis)?;
    let status = grows(back);
    let mut v = Verdict::new(Criterion::UniformPositiveExpansivityDissipative, status)
        .with_tail_model(describe(back, fwd))
        .with_values(a_values(analysis, (1..=analysis.config.horizon as i64).map(|n| -n))?);
    if status == Status::Fails {
        v = v.with_witness(tail_witness("k->-inf", back));
    }
    Ok(gated(v, notes))
}

/// Uniform expansivity from the orbit-norm ratios of `χ_W`.
///
/// * `forward`: `inf_k a_k / a_{k−n} → ∞`, i.e. `T₋` grows and `T₊` decays;
/// * `backward`: `inf_k a_k / a_{k+n} → ∞`, the mirror;
/// * `split`: `forward` together with divergence of `a_k / a_{k+n}` over
///   `k ≥ 0`, which needs `T₊` to grow.
///
/// Divergence of the `a`-ratios from divergence of the measure ratios needs
/// a finite growth index; the failure direction does not.
pub fn uniformly_expansive_dissipative(analysis: &Analysis) -> Result<Verdict> {
    let mut notes = analysis.dissipative_gate()?;
    notes.extend(analysis.require(&analysis.delta2, "delta2", false)?);
    let (back, fwd) = tails(analysis)?;
    let forward = grows(back).and(decays(fwd));
    let backward = grows(fwd).and(decays(back));
    let split = forward.and(grows(fwd));
    let mut status = forward.or(backward).or(split);
    let finite_index = analysis.system.phi.growth_index().is_some();
    if status == Status::Holds && !finite_index {
        status = Status::Undetermined;
        notes.push("Phi has no finite growth index".into());
    }

    let h = analysis.config.horizon as i64;
    let seq = analysis.structure()?.ratio_sequence(&analysis.system, -2 * h..=h)?;
    let evidence: Vec<f64> = (1..=h)
        .map_while(|n| {
            (-h..=h)
                .filter_map(|k| Some(seq.ln_a(k)? - seq.ln_a(k - n)?))
                .reduce(f64::min)
                .map(f64::exp)
        })
        .collect();

    let mut v = Verdict::new(Criterion::UniformExpansivityDissipative, status)
        .with_tail_model(describe(back, fwd))
        .with_values(evidence);
    if status == Status::Holds {
        let tag = if forward == Status::Holds {
            "forward"
        } else if backward == Status::Holds {
            "backward"
        } else {
            "split"
        };
        v = v.with_condition(tag);
    } else if status == Status::Fails {
        let side = if grows(back) == Status::Holds { "k->+inf" } else { "k->-inf" };
        let t = if side == "k->+inf" { fwd } else { back };
        v = v.with_witness(tail_witness(side, t));
    }
    Ok(gated(v, notes))
}
