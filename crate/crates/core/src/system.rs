//! A measure space, a bijection and a Young function: the composition
//! operator `C_φ f = f ∘ φ` on the Orlicz space they define.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SimpleFunction;
use crate::norm::gauge_norm;
use crate::space::{AtomSet, MeasureSpace, WeightRule, DeclaredTail};
use crate::tail::{Side, TailModel};
use crate::transform::{Settled, Transform};
use crate::young::YoungFunction;

/// Which way an orbit runs: `Backward` is `n ↦ φ^{-n}`, `Forward` is `n ↦ φ^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Backward,
    Forward,
}

#[derive(Debug, Clone, Serialize)]
pub struct System {
    pub space: MeasureSpace,
    pub transform: Transform,
    pub phi: YoungFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundedness {
    Bounded,
    UnboundedEvidence,
    Undetermined,
}

/// Per-atom bound `μ(φ⁻¹(a)) ≤ c μ(a)` (and the same for `φ`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundednessCertificate {
    pub status: Boundedness,
    /// Sup over the examined atoms of `μ(φ⁻¹(a)) / μ(a)`.
    pub constant: f64,
    pub inverse_status: Boundedness,
    /// Sup over the examined atoms of `μ(φ(a)) / μ(a)`.
    pub inverse_constant: f64,
    /// Atoms examined (window plus tail margin).
    pub examined: (i64, i64),
    pub note: String,
}

impl BoundednessCertificate {
    pub fn unbounded_evidence(&self) -> bool {
        self.status == Boundedness::UnboundedEvidence || self.inverse_status == Boundedness::UnboundedEvidence
    }

    pub fn both_bounded(&self) -> bool {
        self.status == Boundedness::Bounded && self.inverse_status == Boundedness::Bounded
    }
}

impl System {
    /// Tables that reject off-window atoms must cover the space window.
    pub fn new(space: MeasureSpace, transform: Transform, phi: YoungFunction) -> Result<System> {
        if transform.eventual_shift().is_none() {
            let (lo, hi) = space.window();
            for i in [lo, hi] {
                transform.forward(i)?;
            }
        }
        Ok(System { space, transform, phi })
    }

    /// `φ^k(set)`.
    pub fn image(&self, set: &AtomSet, k: i64) -> Result<AtomSet> {
        set.iter().map(|&a| self.transform.power(a, k)).collect()
    }

    /// `ln μ(φ^k(set))`.
    pub fn ln_orbit_measure(&self, set: &AtomSet, k: i64) -> Result<f64> {
        self.space.ln_measure(&self.image(set, k)?)
    }

    /// `C_φ^n f`, supported on `φ^{-n}(S(f))`.
    pub fn compose_power(&self, f: &SimpleFunction, n: i64) -> Result<SimpleFunction> {
        f.relabel(|j| {
            let i = self.transform.power(j, -n)?;
            if self.space.contains(i) {
                Ok(i)
            } else {
                Err(Error::WindowEscape(i))
            }
        })
    }

    /// `(n, N_Φ(C_φ^n f))` for each `n` in the range.
    pub fn orbit_gauge_norms(
        &self,
        f: &SimpleFunction,
        ns: std::ops::RangeInclusive<i64>,
    ) -> Result<Vec<(i64, f64)>> {
        ns.map(|n| Ok((n, gauge_norm(&self.space, &self.phi, &self.compose_power(f, n)?)?.value)))
            .collect()
    }

    /// Tail model of `n ↦ μ(φ^{∓n}{a})`.
    pub fn orbit_tail(&self, atom: i64, direction: Direction) -> Option<TailModel> {
        match self.transform.settle(atom, direction == Direction::Backward).ok()? {
            Settled::Cycle { period } => Some(TailModel::geometric(1.0, period == 1)),
            Settled::Drift { start, side, stride, .. } => self.space.progression_tail(side, start, stride),
        }
    }

    /// Tail model of `n ↦ μ(φ^{∓n}(set))`.
    pub fn set_orbit_tail(&self, set: &AtomSet, direction: Direction) -> Option<TailModel> {
        let tails: Vec<Option<TailModel>> = set.iter().map(|&a| self.orbit_tail(a, direction)).collect();
        crate::tail::sum_all(tails.iter().map(Option::as_ref))
    }

    /// Per-atom ratio certificate for condition `μ(φ⁻¹(A)) ≤ c μ(A)` and its
    /// mirror for `φ`. The sup runs over the space window widened by a
    /// margin that covers one period of every periodic tail pattern.
    pub fn boundedness_check(&self) -> BoundednessCertificate {
        let (wlo, whi) = self.space.window();
        let Some(step) = self.transform.eventual_shift() else {
            let (c, ci) = self.ratio_sups(wlo, whi);
            return BoundednessCertificate {
                status: Boundedness::Undetermined,
                constant: c,
                inverse_status: Boundedness::Undetermined,
                inverse_constant: ci,
                examined: (wlo, whi),
                note: "table transform without an off-window rule: no tail to certify".into(),
            };
        };
        let (rlo, rhi) = self.transform.table_region().unwrap_or((wlo, whi));
        let period = match self.space.rule() {
            WeightRule::Interleaved { ratios, .. } => ratios.len() as i64,
            WeightRule::Table { left, right, .. } => [left, right]
                .into_iter()
                .flatten()
                .map(|t| match t {
                    DeclaredTail::Periodic { period } => *period as i64,
                    _ => 1,
                })
                .max()
                .unwrap_or(1),
            _ => 1,
        };
        let margin = 2 * period * step.abs().max(1);
        let (lo, hi) = (wlo.min(rlo) - margin, whi.max(rhi) + margin);
        let (c, ci) = self.ratio_sups(lo, hi);

        let mut notes = Vec::new();
        let mut kinds = Vec::new();
        for side in [Side::Left, Side::Right] {
            let kind = self.ratio_tail_kind(side, step);
            if kind != Boundedness::Bounded {
                notes.push(format!("{} tail: {kind:?}", side.as_str()));
            }
            kinds.push(kind);
        }
        let status = if kinds.iter().all(|&k| k == Boundedness::Bounded) {
            Boundedness::Bounded
        } else if kinds.contains(&Boundedness::UnboundedEvidence) {
            Boundedness::UnboundedEvidence
        } else {
            Boundedness::Undetermined
        };
        BoundednessCertificate {
            status,
            constant: c,
            inverse_status: status,
            inverse_constant: ci,
            examined: (lo, hi),
            note: notes.join("; "),
        }
    }

    /// How `w(a ∓ step)/w(a)` behaves as `a` runs out on `side`.
    fn ratio_tail_kind(&self, side: Side, step: i64) -> Boundedness {
        if step == 0 {
            return Boundedness::Bounded;
        }
        match self.space.rule() {
            WeightRule::Geometric { .. } | WeightRule::TwoSidedExp { .. } => Boundedness::Bounded,
            WeightRule::Interleaved { ratios, .. } => {
                let m = ratios.len() as i64;
                if step % m == 0 || ratios.windows(2).all(|w| w[0] == w[1]) {
                    Boundedness::Bounded
                } else {
                    Boundedness::UnboundedEvidence
                }
            }
            WeightRule::Table { .. } => match self.space.progression_tail(side, 0, 1) {
                Some(TailModel::Geometric { .. }) => Boundedness::Bounded,
                _ => Boundedness::Undetermined,
            },
        }
    }

    /// Sups of `μ(φ⁻¹(a))/μ(a)` and `μ(φ(a))/μ(a)` over atoms of `[lo, hi]`
    /// whose weights are available.
    fn ratio_sups(&self, lo: i64, hi: i64) -> (f64, f64) {
        let mut c = f64::NEG_INFINITY;
        let mut ci = f64::NEG_INFINITY;
        for a in lo..=hi {
            let Ok(wa) = self.space.ln_weight(a) else { continue };
            if let Some(v) = self.transform.inverse(a).ok().and_then(|b| self.space.ln_weight(b).ok()) {
                c = c.max(v - wa);
            }
            if let Some(v) = self.transform.forward(a).ok().and_then(|b| self.space.ln_weight(b).ok()) {
                ci = ci.max(v - wa);
            }
        }
        (c.exp(), ci.exp())
    }
}
