//! Tail models for outward sequences of positive reals (weights, orbit
//! measures). A model says how the sequence behaves as the index runs away
//! from the materialized window; every limit decision goes through one.

use serde::Serialize;

use crate::verdict::Status;

/// `|ln ρ|` below this is treated as ratio exactly 1.
pub const UNIT_RATIO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    /// Unit step pointing away from the window on this side.
    pub fn outward(self) -> i64 {
        match self {
            Side::Left => -1,
            Side::Right => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum TailModel {
    /// `s_n = c_n ρ^n` with `c_n` bounded above and away from zero; `exact`
    /// when `c_n` is eventually constant.
    Geometric { ratio: f64, exact: bool },
    /// Monotone in the outward direction, with no rate attached.
    Monotone { increasing: bool },
}

impl TailModel {
    pub fn geometric(ratio: f64, exact: bool) -> TailModel {
        let ratio = if ratio.ln().abs() <= UNIT_RATIO_TOL { 1.0 } else { ratio };
        TailModel::Geometric { ratio, exact }
    }

    /// Bounded modulation with no drift (periodic sequences).
    pub fn bounded() -> TailModel {
        TailModel::Geometric { ratio: 1.0, exact: false }
    }

    pub fn ratio(&self) -> Option<f64> {
        match self {
            TailModel::Geometric { ratio, .. } => Some(*ratio),
            TailModel::Monotone { .. } => None,
        }
    }

    /// `s_n → ∞`. For these models this coincides with `sup s_n = ∞`.
    pub fn grows(&self) -> Status {
        match *self {
            TailModel::Geometric { ratio, .. } => Status::from_bool(ratio > 1.0),
            TailModel::Monotone { increasing: true } => Status::Undetermined,
            TailModel::Monotone { increasing: false } => Status::Fails,
        }
    }

    /// `s_n → 0`.
    pub fn decays(&self) -> Status {
        match *self {
            TailModel::Geometric { ratio, .. } => Status::from_bool(ratio < 1.0),
            TailModel::Monotone { increasing: true } => Status::Fails,
            TailModel::Monotone { increasing: false } => Status::Undetermined,
        }
    }

    /// Model of `s_n + t_n`.
    pub fn sum(&self, other: &TailModel) -> Option<TailModel> {
        match (*self, *other) {
            (
                TailModel::Geometric { ratio: a, exact: ea },
                TailModel::Geometric { ratio: b, exact: eb },
            ) => Some(TailModel::Geometric { ratio: a.max(b), exact: ea && eb && a == b }),
            (TailModel::Monotone { increasing: a }, TailModel::Monotone { increasing: b }) if a == b => {
                Some(TailModel::Monotone { increasing: a })
            }
            _ => None,
        }
    }

    /// Model of `n ↦ s_{stride·n}`.
    pub fn subsample(&self, stride: u64) -> TailModel {
        match *self {
            TailModel::Geometric { ratio, exact } => TailModel::geometric(ratio.powf(stride as f64), exact),
            m => m,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            TailModel::Geometric { ratio, exact: true } => format!("geometric(ratio={ratio})"),
            TailModel::Geometric { ratio, exact: false } if *ratio == 1.0 => "bounded(periodic)".into(),
            TailModel::Geometric { ratio, exact: false } => format!("geometric~(ratio={ratio})"),
            TailModel::Monotone { increasing: true } => "monotone_increasing".into(),
            TailModel::Monotone { increasing: false } => "monotone_decreasing".into(),
        }
    }
}

/// Sum of a family of tails; `None` if any member is unknown or the family
/// does not combine.
pub fn sum_all<'a>(tails: impl IntoIterator<Item = Option<&'a TailModel>>) -> Option<TailModel> {
    let mut acc: Option<TailModel> = None;
    for t in tails {
        let t = *t?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.sum(&t)?,
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use Status::*;

    #[test]
    fn predicates() {
        let up = TailModel::geometric(2.0, true);
        let down = TailModel::geometric(0.5, true);
        let flat = TailModel::bounded();
        assert_eq!((up.grows(), up.decays()), (Holds, Fails));
        assert_eq!((down.grows(), down.decays()), (Fails, Holds));
        assert_eq!((flat.grows(), flat.decays()), (Fails, Fails));
        let inc = TailModel::Monotone { increasing: true };
        assert_eq!((inc.grows(), inc.decays()), (Undetermined, Fails));
        let dec = TailModel::Monotone { increasing: false };
        assert_eq!((dec.grows(), dec.decays()), (Fails, Undetermined));
    }

    #[test]
    fn near_unit_ratio_snaps() {
        assert_eq!(TailModel::geometric(1.0 + 1e-14, true).ratio(), Some(1.0));
        assert_eq!(TailModel::geometric(2f64.powf(0.5).powi(2) / 2.0, true).ratio(), Some(1.0));
    }

    #[test]
    fn sums_and_subsampling() {
        let a = TailModel::geometric(2.0, true);
        let b = TailModel::geometric(3.0, true);
        assert_eq!(a.sum(&b), Some(TailModel::Geometric { ratio: 3.0, exact: false }));
        assert_eq!(a.sum(&a), Some(a));
        let inc = TailModel::Monotone { increasing: true };
        assert_eq!(a.sum(&inc), None);
        assert_eq!(inc.sum(&inc), Some(inc));
        assert_eq!(a.subsample(3).ratio(), Some(8.0));
        assert_eq!(sum_all([Some(&a), Some(&b), None]), None);
        assert_eq!(sum_all([Some(&a), Some(&b)]).unwrap().ratio(), Some(3.0));
    }
}
