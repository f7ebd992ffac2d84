//! Growth exponents of the generator sequence `a_k`.
//!
//! With `ρ₊` the rate of `μ(φ^k(W))` as `k → +∞`, `ρ₋` its rate as
//! `k → −∞`, and `Φ = |x|^p`, the ratios `a_{k+1}/a_k` tend to
//! `e^{α_R}` on the right and `e^{α_L}` on the left, where
//! `α_R = −ln ρ₊ / p` and `α_L = ln ρ₋ / p`. Every exponent below is a
//! max, min or single one of these.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::verdict::Status;

use super::Analysis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Constant,
    NonIncreasing,
    NonDecreasing,
    Mixed,
    /// Fewer than four terms.
    Short,
}

fn trend(trace: &[f64]) -> Trend {
    if trace.len() < 4 {
        return Trend::Short;
    }
    let q = &trace[trace.len() - trace.len() / 4 - 1..];
    let tol = |a: f64, b: f64| 1e-12 * a.abs().max(b.abs());
    let (lo, hi) = q.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    if hi - lo <= tol(lo, hi) {
        Trend::Constant
    } else if q.windows(2).all(|w| w[1] <= w[0] + tol(w[0], w[1])) {
        Trend::NonIncreasing
    } else if q.windows(2).all(|w| w[1] + tol(w[0], w[1]) >= w[0]) {
        Trend::NonDecreasing
    } else {
        Trend::Mixed
    }
}

/// One limit `λ` with its evidence and its position relative to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exponent {
    pub name: &'static str,
    /// Formula of the limit in terms of `a_k`.
    pub formula: &'static str,
    pub closed_form: Option<f64>,
    /// Last term of the trace.
    pub numeric: Option<f64>,
    /// Inner sup/inf raised to `1/n`, for `n = 1..`.
    pub trace: Vec<f64>,
    pub trend: Trend,
    /// `λ < 1`, decided from the closed form or the tail signs.
    pub below_one: Status,
    /// `λ > 1`.
    pub above_one: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentEstimates {
    pub horizon: usize,
    /// `limsup sup_{k∈ℤ} (a_{k+n}/a_k)^{1/n}`.
    pub forward_sup_all: Exponent,
    /// `liminf inf_{k∈ℤ} (a_{k+n}/a_k)^{1/n}`.
    pub forward_inf_all: Exponent,
    /// `limsup sup_{k≥0} (a_{k+n}/a_k)^{1/n}`.
    pub forward_sup_nonneg: Exponent,
    /// `liminf inf_{k≤0} (a_k/a_{k−n})^{1/n}`.
    pub backward_inf_nonpos: Exponent,
    /// `limsup sup_{k≤0} (a_k/a_{k−n})^{1/n}`.
    pub backward_sup_nonpos: Exponent,
    /// `liminf inf_{k≥0} (a_k/a_{k+n})^{1/n}`.
    pub reverse_inf_nonneg: Exponent,
    /// `(α_L, α_R)` for power `Φ` with geometric tails.
    pub log_rates: Option<(f64, f64)>,
    pub note: String,
}

impl ExponentEstimates {
    pub fn all(&self) -> [&Exponent; 6] {
        [
            &self.forward_sup_all,
            &self.forward_inf_all,
            &self.forward_sup_nonneg,
            &self.backward_inf_nonpos,
            &self.backward_sup_nonpos,
            &self.reverse_inf_nonneg,
        ]
    }
}

/// Signs of the log rates: `Some(sign)` when decided.
#[derive(Clone, Copy)]
struct Signs {
    left: Option<f64>,
    right: Option<f64>,
}

#[derive(Clone, Copy)]
enum Combine {
    Max,
    Min,
    Left,
    Right,
    NegRight,
}

fn position(value: Option<f64>, margin: f64) -> (Status, Status) {
    match value {
        Some(l) if l == 1.0 => (Status::Fails, Status::Fails),
        Some(l) if l < 1.0 - margin => (Status::Holds, Status::Fails),
        Some(l) if l > 1.0 + margin => (Status::Fails, Status::Holds),
        _ => (Status::Undetermined, Status::Undetermined),
    }
}

fn sign_position(sign: Option<f64>) -> (Status, Status) {
    match sign {
        Some(s) if s < 0.0 => (Status::Holds, Status::Fails),
        Some(s) if s > 0.0 => (Status::Fails, Status::Holds),
        Some(_) => (Status::Fails, Status::Fails),
        None => (Status::Undetermined, Status::Undetermined),
    }
}

fn combine(c: Combine, l: Option<f64>, r: Option<f64>) -> Option<f64> {
    match c {
        Combine::Max => Some(l?.max(r?)),
        Combine::Min => Some(l?.min(r?)),
        Combine::Left => l,
        Combine::Right => r,
        Combine::NegRight => r.map(|r| -r),
    }
}

pub fn exponent_estimates(analysis: &Analysis) -> Result<ExponentEstimates> {
    let structure = analysis.structure()?;
    let h = analysis.config.horizon as i64;
    if h < 1 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let seq = structure.ratio_sequence(&analysis.system, -2 * h..=2 * h)?;
    let ln_a = |k: i64| seq.ln_a(k);

    let rate = |t: Option<crate::tail::TailModel>| t.and_then(|t| t.ratio()).map(f64::ln);
    let (g_minus, g_plus) = (rate(structure.backward_tail), rate(structure.forward_tail));
    let p = analysis.system.phi.power_exponent();
    let finite_index = analysis.system.phi.growth_index().is_some();
    let log_rates = match (p, g_minus, g_plus) {
        (Some(p), Some(gm), Some(gp)) => Some((gm / p, -gp / p)),
        _ => None,
    };
    let signs = Signs {
        left: g_minus.filter(|_| finite_index),
        right: g_plus.filter(|_| finite_index).map(|g| -g),
    };
    let margin = analysis.config.margin;

    // inner sup/inf over k of ln(a_{k+n}/a_k) or its mirror, divided by n
    let trace = |ks: &dyn Fn(i64) -> std::ops::RangeInclusive<i64>, diff: &dyn Fn(i64, i64) -> Option<f64>, sup: bool| {
        (1..=h)
            .map_while(|n| {
                let vals = ks(n).filter_map(|k| diff(k, n));
                let best = if sup { vals.reduce(f64::max) } else { vals.reduce(f64::min) };
                best.map(|v| (v / n as f64).exp())
            })
            .collect::<Vec<f64>>()
    };
    let fwd = |k: i64, n: i64| Some(ln_a(k + n)? - ln_a(k)?);
    let bwd = |k: i64, n: i64| Some(ln_a(k)? - ln_a(k - n)?);
    let rev = |k: i64, n: i64| Some(ln_a(k)? - ln_a(k + n)?);
    let all = |_n: i64| -h..=h;
    let nonneg = |_n: i64| 0..=h;
    let nonpos = |_n: i64| -h..=0;

    let build = |name: &'static str, formula: &'static str, c: Combine, tr: Vec<f64>| {
        let closed_form = log_rates.and_then(|(l, r)| combine(c, Some(l), Some(r))).map(f64::exp);
        let (below_one, above_one) = if closed_form.is_some() {
            position(closed_form, margin)
        } else {
            sign_position(combine(c, signs.left, signs.right).map(f64::signum))
        };
        Exponent {
            name,
            formula,
            closed_form,
            numeric: tr.last().copied(),
            trend: trend(&tr),
            trace: tr,
            below_one,
            above_one,
        }
    };

    let mut note = String::new();
    if log_rates.is_none() {
        note = if signs.left.is_some() || signs.right.is_some() {
            "no closed form; positions relative to 1 follow from tail signs only".into()
        } else {
            "no closed form and no tail signs; positions undetermined".into()
        };
    }
    if seq.k_lo > -2 * h || seq.k_hi < 2 * h {
        note = format!("{note}; ratio sequence available on [{}, {}] only", seq.k_lo, seq.k_hi);
    }

    Ok(ExponentEstimates {
        horizon: analysis.config.horizon,
        forward_sup_all: build("forward_sup_all", "limsup sup_Z (a_{k+n}/a_k)^{1/n}", Combine::Max, trace(&all, &fwd, true)),
        forward_inf_all: build("forward_inf_all", "liminf inf_Z (a_{k+n}/a_k)^{1/n}", Combine::Min, trace(&all, &fwd, false)),
        forward_sup_nonneg: build(
            "forward_sup_nonneg",
            "limsup sup_{k>=0} (a_{k+n}/a_k)^{1/n}",
            Combine::Right,
            trace(&nonneg, &fwd, true),
        ),
        backward_inf_nonpos: build(
            "backward_inf_nonpos",
            "liminf inf_{k<=0} (a_k/a_{k-n})^{1/n}",
            Combine::Left,
            trace(&nonpos, &bwd, false),
        ),
        backward_sup_nonpos: build(
            "backward_sup_nonpos",
            "limsup sup_{k<=0} (a_k/a_{k-n})^{1/n}",
            Combine::Left,
            trace(&nonpos, &bwd, true),
        ),
        reverse_inf_nonneg: build(
            "reverse_inf_nonneg",
            "liminf inf_{k>=0} (a_k/a_{k+n})^{1/n}",
            Combine::NegRight,
            trace(&nonneg, &rev, false),
        ),
        log_rates,
        note: note.trim_start_matches("; ").to_string(),
    })
}
