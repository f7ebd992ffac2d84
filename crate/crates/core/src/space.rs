//! Purely atomic measure spaces on the integers.
//!
//! Weights come from a rule; all arithmetic is in log space so that windows
//! of a few thousand atoms under exponential rules stay finite. The window
//! bounds the atoms that simple functions and classifiers enumerate; rule
//! weights are defined everywhere, table weights only where data or a
//! verified extrapolating tail provides them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tail::{Side, TailModel};

/// Relative tolerance for verifying a declared tail on table data.
const TAIL_VERIFY_TOL: f64 = 1e-9;

pub type AtomSet = BTreeSet<i64>;

/// Convenience constructor for atom sets.
pub fn atoms(items: &[i64]) -> AtomSet {
    items.iter().copied().collect()
}

/// Tail behavior declared for one side of a weight table, read outward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeclaredTail {
    Geometric { ratio: f64 },
    Periodic { period: usize },
    MonotoneIncreasing,
    MonotoneDecreasing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightRule {
    /// `w(i) = r^i`.
    Geometric { r: f64 },
    /// `w(i) = base^{|i|}`.
    TwoSidedExp { base: f64 },
    /// `w(mk + j) = scales[j] · ratios[j]^k` with `m = ratios.len()`.
    Interleaved { ratios: Vec<f64>, scales: Vec<f64> },
    Table {
        weights: BTreeMap<i64, f64>,
        left: Option<DeclaredTail>,
        right: Option<DeclaredTail>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureSpace {
    rule: WeightRule,
    lo: i64,
    hi: i64,
    /// Table tails that survived verification.
    verified: [Option<DeclaredTail>; 2],
    notes: Vec<String>,
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Left => 0,
        Side::Right => 1,
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpace(format!("{name} must be positive and finite, got {v}")))
    }
}

impl MeasureSpace {
    pub fn geometric(r: f64, lo: i64, hi: i64) -> Result<Self> {
        positive("r", r)?;
        Self::from_rule(WeightRule::Geometric { r }, lo, hi)
    }

    pub fn two_sided_exp(base: f64, lo: i64, hi: i64) -> Result<Self> {
        positive("base", base)?;
        Self::from_rule(WeightRule::TwoSidedExp { base }, lo, hi)
    }

    pub fn interleaved(ratios: Vec<f64>, scales: Vec<f64>, lo: i64, hi: i64) -> Result<Self> {
        if ratios.is_empty() || ratios.len() != scales.len() {
            return Err(Error::InvalidSpace("ratios and scales must be nonempty and of equal length".into()));
        }
        for (&r, &c) in ratios.iter().zip(&scales) {
            positive("ratio", r)?;
            positive("scale", c)?;
        }
        Self::from_rule(WeightRule::Interleaved { ratios, scales }, lo, hi)
    }

    /// Blocks of `m` consecutive atoms sharing the geometric ratio `r` per block.
    pub fn block_geometric(r: f64, m: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::interleaved(vec![r; m], vec![1.0; m], lo, hi)
    }

    /// Explicit weights on a contiguous index range. The window defaults to
    /// the data range; a wider window needs an extrapolating tail
    /// (geometric or periodic) that verifies on the data.
    pub fn table(
        weights: BTreeMap<i64, f64>,
        left: Option<DeclaredTail>,
        right: Option<DeclaredTail>,
        window: Option<(i64, i64)>,
    ) -> Result<Self> {
        let (&first, _) = weights.first_key_value().ok_or_else(|| Error::InvalidSpace("empty weight table".into()))?;
        let (&last, _) = weights.last_key_value().unwrap();
        if (last - first + 1) as usize != weights.len() {
            return Err(Error::InvalidSpace("weight table indices must be contiguous".into()));
        }
        for (&i, &w) in &weights {
            positive(&format!("weight({i})"), w)?;
        }
        for tail in [left, right].into_iter().flatten() {
            match tail {
                DeclaredTail::Geometric { ratio } => positive("tail ratio", ratio)?,
                DeclaredTail::Periodic { period: 0 } => {
                    return Err(Error::InvalidSpace("tail period must be positive".into()))
                }
                _ => {}
            }
        }
        let (lo, hi) = window.unwrap_or((first, last));
        let mut space = MeasureSpace {
            rule: WeightRule::Table { weights, left, right },
            lo,
            hi,
            verified: [None, None],
            notes: Vec::new(),
        };
        for side in [Side::Left, Side::Right] {
            let declared = if side == Side::Left { left } else { right };
            if let Some(tail) = declared {
                if space.verify_table_tail(side, tail) {
                    space.verified[side_index(side)] = Some(tail);
                } else {
                    space.notes.push(format!(
                        "declared {} tail {tail:?} does not verify on the data; treated as undeclared",
                        side.as_str()
                    ));
                }
            }
        }
        space.check_window()?;
        Ok(space)
    }

    fn from_rule(rule: WeightRule, lo: i64, hi: i64) -> Result<Self> {
        let space = MeasureSpace { rule, lo, hi, verified: [None, None], notes: Vec::new() };
        space.check_window()?;
        Ok(space)
    }

    fn check_window(&self) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::InvalidSpace(format!("empty window [{}, {}]", self.lo, self.hi)));
        }
        for i in [self.lo, self.hi] {
            let lw = self.ln_weight(i)?;
            if !lw.is_finite() {
                return Err(Error::InvalidSpace(format!("weight of atom {i} is not finite in log space")));
            }
        }
        Ok(())
    }

    pub fn rule(&self) -> &WeightRule {
        &self.rule
    }

    pub fn kind(&self) -> &'static str {
        match self.rule {
            WeightRule::Geometric { .. } => "geometric",
            WeightRule::TwoSidedExp { .. } => "two_sided_exp",
            WeightRule::Interleaved { .. } => "interleaved",
            WeightRule::Table { .. } => "table",
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn window_atoms(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    /// Diagnostics from construction (e.g. declared tails that failed to verify).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Restricts or extends the window; weights must be available on it.
    pub fn with_window(&self, lo: i64, hi: i64) -> Result<Self> {
        let space = MeasureSpace { lo, hi, ..self.clone() };
        space.check_window()?;
        Ok(space)
    }

    pub fn ln_weight(&self, i: i64) -> Result<f64> {
        Ok(match &self.rule {
            WeightRule::Geometric { r } => i as f64 * r.ln(),
            WeightRule::TwoSidedExp { base } => i.unsigned_abs() as f64 * base.ln(),
            WeightRule::Interleaved { ratios, scales } => {
                let m = ratios.len() as i64;
                let (k, j) = (i.div_euclid(m), i.rem_euclid(m) as usize);
                scales[j].ln() + k as f64 * ratios[j].ln()
            }
            WeightRule::Table { weights, .. } => {
                if let Some(w) = weights.get(&i) {
                    return Ok(w.ln());
                }
                let (&first, _) = weights.first_key_value().unwrap();
                let (&last, _) = weights.last_key_value().unwrap();
                let (side, edge) = if i < first { (Side::Left, first) } else { (Side::Right, last) };
                let beyond = (i - edge).unsigned_abs();
                match self.verified[side_index(side)] {
                    Some(DeclaredTail::Geometric { ratio }) => weights[&edge].ln() + beyond as f64 * ratio.ln(),
                    Some(DeclaredTail::Periodic { period }) => {
                        let p = period as u64;
                        let shift = (beyond.div_ceil(p) * p) as i64;
                        let back = i - side.outward() * shift;
                        weights.get(&back).ok_or(Error::WeightUnavailable(i))?.ln()
                    }
                    _ => return Err(Error::WeightUnavailable(i)),
                }
            }
        })
    }

    pub fn weight(&self, i: i64) -> Result<f64> {
        self.ln_weight(i).map(f64::exp)
    }

    pub fn ln_measure(&self, set: &AtomSet) -> Result<f64> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let lws = set.iter().map(|&i| self.ln_weight(i)).collect::<Result<Vec<_>>>()?;
        Ok(log_sum_exp(&lws))
    }

    pub fn measure(&self, set: &AtomSet) -> Result<f64> {
        self.ln_measure(set).map(f64::exp)
    }

    /// Tail model of `n ↦ w(start + side.outward()·stride·n)`, when the rule
    /// or a verified declared tail supports one.
    pub fn progression_tail(&self, side: Side, start: i64, stride: u64) -> Option<TailModel> {
        if stride == 0 {
            return Some(TailModel::geometric(1.0, true));
        }
        let s = stride as f64;
        let orient = |ratio_right: f64| match side {
            Side::Right => ratio_right,
            Side::Left => 1.0 / ratio_right,
        };
        match &self.rule {
            WeightRule::Geometric { r } => Some(TailModel::geometric(orient(r.powf(s)), true)),
            WeightRule::TwoSidedExp { base } => Some(TailModel::geometric(base.powf(s), true)),
            WeightRule::Interleaved { ratios, .. } => {
                let m = ratios.len() as u64;
                let per_block = s / m as f64;
                if stride % m == 0 {
                    let j = start.rem_euclid(m as i64) as usize;
                    Some(TailModel::geometric(orient(ratios[j].powf(per_block)), true))
                } else if ratios.windows(2).all(|w| w[0] == w[1]) {
                    Some(TailModel::geometric(orient(ratios[0].powf(per_block)), false))
                } else {
                    None
                }
            }
            WeightRule::Table { .. } => match self.verified[side_index(side)]? {
                DeclaredTail::Geometric { ratio } => Some(TailModel::geometric(ratio.powf(s), true)),
                DeclaredTail::Periodic { .. } => Some(TailModel::bounded()),
                DeclaredTail::MonotoneIncreasing => Some(TailModel::Monotone { increasing: true }),
                DeclaredTail::MonotoneDecreasing => Some(TailModel::Monotone { increasing: false }),
            },
        }
    }

    /// Checks a declared tail against the outer half of that side: the
    /// outermost quarter of the table.
    fn verify_table_tail(&self, side: Side, tail: DeclaredTail) -> bool {
        let WeightRule::Table { weights, .. } = &self.rule else { return false };
        let mut outward: Vec<f64> = weights.values().copied().collect();
        if side == Side::Left {
            outward.reverse();
        }
        let half = &outward[outward.len() - outward.len() / 4..];
        let close = |a: f64, b: f64| (a - b).abs() <= TAIL_VERIFY_TOL * a.abs().max(b.abs());
        match tail {
            DeclaredTail::Geometric { ratio } => {
                half.len() >= 2 && half.windows(2).all(|w| close(w[1] / w[0], ratio))
            }
            DeclaredTail::Periodic { period } => {
                half.len() > period && half.iter().zip(&half[period..]).all(|(&a, &b)| close(a, b))
            }
            DeclaredTail::MonotoneIncreasing => half.len() >= 2 && half.windows(2).all(|w| w[1] >= w[0]),
            DeclaredTail::MonotoneDecreasing => half.len() >= 2 && half.windows(2).all(|w| w[1] <= w[0]),
        }
    }
}

/// `ln Σ e^{x_i}` without overflow.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}
