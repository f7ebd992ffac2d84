//! Bijections of the integers: shifts, and explicit tables on a finite
//! region with a declared rule outside it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tail::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OffWindow {
    /// The map is undefined off the table; the table must permute its domain.
    Reject,
    /// `i ↦ i + step` off the table; the table image must be the domain
    /// translated by `step`.
    ExtendByShift { step: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transform {
    /// `i ↦ i + step`; `step = 0` is the identity.
    Shift { step: i64 },
    Table {
        forward: BTreeMap<i64, i64>,
        #[serde(skip)]
        inverse: BTreeMap<i64, i64>,
        off_window: OffWindow,
    },
}

/// Where an orbit ends up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Settled {
    /// The orbit returns to its start.
    Cycle { period: u64 },
    /// After `steps` iterations the orbit sits at `start` and moves by
    /// `stride` per step toward `side` forever.
    Drift { start: i64, side: Side, stride: u64, steps: u64 },
}

impl Transform {
    pub fn shift(step: i64) -> Transform {
        Transform::Shift { step }
    }

    pub fn identity() -> Transform {
        Transform::Shift { step: 0 }
    }

    /// Explicit map on a contiguous domain.
    pub fn table(forward: BTreeMap<i64, i64>, off_window: OffWindow) -> Result<Transform> {
        let (&lo, _) = forward
            .first_key_value()
            .ok_or_else(|| Error::InvalidTransform("empty transform table".into()))?;
        let (&hi, _) = forward.last_key_value().unwrap();
        if (hi - lo + 1) as usize != forward.len() {
            return Err(Error::InvalidTransform("table domain must be contiguous".into()));
        }
        let mut inverse = BTreeMap::new();
        for (&i, &j) in &forward {
            if let Some(prev) = inverse.insert(j, i) {
                return Err(Error::InvalidTransform(format!("atoms {prev} and {i} both map to {j}")));
            }
        }
        let shift = match off_window {
            OffWindow::Reject => 0,
            OffWindow::ExtendByShift { step } => step,
        };
        let (img_lo, img_hi) = (*inverse.first_key_value().unwrap().0, *inverse.last_key_value().unwrap().0);
        if img_lo != lo + shift || img_hi != hi + shift {
            return Err(Error::InvalidTransform(format!(
                "table image [{img_lo}, {img_hi}] must equal the domain shifted by {shift}"
            )));
        }
        Ok(Transform::Table { forward, inverse, off_window })
    }

    /// Step of the pure shift the map agrees with far from the origin;
    /// `None` for tables that reject off-window atoms.
    pub fn eventual_shift(&self) -> Option<i64> {
        match self {
            Transform::Shift { step } => Some(*step),
            Transform::Table { off_window: OffWindow::ExtendByShift { step }, .. } => Some(*step),
            Transform::Table { off_window: OffWindow::Reject, .. } => None,
        }
    }

    /// Smallest interval containing the table domain and image.
    pub fn table_region(&self) -> Option<(i64, i64)> {
        match self {
            Transform::Shift { .. } => None,
            Transform::Table { forward, inverse, .. } => {
                let lo = (*forward.first_key_value()?.0).min(*inverse.first_key_value()?.0);
                let hi = (*forward.last_key_value()?.0).max(*inverse.last_key_value()?.0);
                Some((lo, hi))
            }
        }
    }

    pub fn forward(&self, i: i64) -> Result<i64> {
        match self {
            Transform::Shift { step } => Ok(i + step),
            Transform::Table { forward, off_window, .. } => match (forward.get(&i), off_window) {
                (Some(&j), _) => Ok(j),
                (None, OffWindow::ExtendByShift { step }) => Ok(i + step),
                (None, OffWindow::Reject) => Err(Error::WindowEscape(i)),
            },
        }
    }

    pub fn inverse(&self, i: i64) -> Result<i64> {
        match self {
            Transform::Shift { step } => Ok(i - step),
            Transform::Table { inverse, off_window, .. } => match (inverse.get(&i), off_window) {
                (Some(&j), _) => Ok(j),
                (None, OffWindow::ExtendByShift { step }) => Ok(i - step),
                (None, OffWindow::Reject) => Err(Error::WindowEscape(i)),
            },
        }
    }

    /// `φ^n(i)` for any integer `n`.
    pub fn power(&self, i: i64, n: i64) -> Result<i64> {
        match self {
            Transform::Shift { step } => Ok(i + n * step),
            Transform::Table { off_window, .. } => {
                let region = self.table_region().unwrap();
                let step = match off_window {
                    OffWindow::ExtendByShift { step } => *step,
                    OffWindow::Reject => 0,
                };
                // direction of motion off the table
                let drift = if n >= 0 { step } else { -step };
                let mut x = i;
                for done in 0..n.unsigned_abs() {
                    let past = (drift > 0 && x > region.1) || (drift < 0 && x < region.0);
                    if past {
                        return Ok(x + drift * (n.unsigned_abs() - done) as i64);
                    }
                    x = if n >= 0 { self.forward(x)? } else { self.inverse(x)? };
                }
                Ok(x)
            }
        }
    }

    /// Follows the forward (`backward = false`) or backward orbit of `i`
    /// until it either cycles or leaves the table region for good.
    pub fn settle(&self, i: i64, backward: bool) -> Result<Settled> {
        let step = self.eventual_shift().unwrap_or(0);
        let drift = if backward { -step } else { step };
        let side_of = |d: i64| if d > 0 { Side::Right } else { Side::Left };
        match self {
            Transform::Shift { .. } if drift == 0 => Ok(Settled::Cycle { period: 1 }),
            Transform::Shift { .. } => {
                Ok(Settled::Drift { start: i, side: side_of(drift), stride: drift.unsigned_abs(), steps: 0 })
            }
            Transform::Table { forward, .. } => {
                let region = self.table_region().unwrap();
                let dist = (region.0 - i).max(i - region.1).max(0) as u64;
                let limit = forward.len() as u64 + dist + 2;
                let mut x = i;
                for steps in 0..=limit {
                    if drift != 0 && ((drift > 0 && x > region.1) || (drift < 0 && x < region.0)) {
                        return Ok(Settled::Drift {
                            start: x,
                            side: side_of(drift),
                            stride: drift.unsigned_abs(),
                            steps,
                        });
                    }
                    if drift == 0 && (x < region.0 || x > region.1) {
                        return Ok(Settled::Cycle { period: 1 });
                    }
                    x = if backward { self.inverse(x)? } else { self.forward(x)? };
                    if x == i {
                        return Ok(Settled::Cycle { period: steps + 1 });
                    }
                }
                Err(Error::InvalidTransform(format!("orbit of {i} neither cycles nor leaves the table")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap01() -> Transform {
        Transform::table([(0, 1), (1, 0)].into_iter().collect(), OffWindow::Reject).unwrap()
    }

    #[test]
    fn shift_powers() {
        let s = Transform::shift(1);
        assert_eq!(s.power(0, 2).unwrap(), 2);
        assert_eq!(s.power(0, -1).unwrap(), -1);
        assert_eq!(s.inverse(s.forward(5).unwrap()).unwrap(), 5);
    }

    #[test]
    fn table_validation() {
        let dup: BTreeMap<i64, i64> = [(0, 1), (1, 1)].into_iter().collect();
        assert!(Transform::table(dup, OffWindow::Reject).is_err());
        let escape: BTreeMap<i64, i64> = [(0, 1), (1, 2)].into_iter().collect();
        assert!(Transform::table(escape.clone(), OffWindow::Reject).is_err());
        assert!(Transform::table(escape, OffWindow::ExtendByShift { step: 1 }).is_ok());
    }

    #[test]
    fn reject_table_cycles() {
        let t = swap01();
        assert_eq!(t.power(0, 3).unwrap(), 1);
        assert_eq!(t.forward(2), Err(Error::WindowEscape(2)));
        assert_eq!(t.settle(0, true).unwrap(), Settled::Cycle { period: 2 });
        assert_eq!(t.eventual_shift(), None);
    }

    #[test]
    fn extended_table_settles() {
        // 0 ↦ 4, 1..3 fixed, shift by 1 elsewhere
        let map: BTreeMap<i64, i64> = [(0, 4), (1, 1), (2, 2), (3, 3)].into_iter().collect();
        let t = Transform::table(map, OffWindow::ExtendByShift { step: 1 }).unwrap();
        assert_eq!(t.forward(-1).unwrap(), 0);
        assert_eq!(t.power(-1, 2).unwrap(), 4);
        assert_eq!(t.power(-1, 10).unwrap(), 12);
        assert_eq!(t.power(12, -10).unwrap(), -1);
        assert_eq!(t.settle(2, false).unwrap(), Settled::Cycle { period: 1 });
        assert!(matches!(t.settle(-50, false).unwrap(), Settled::Drift { start: 5, steps: 52, .. }));
        assert_eq!(
            t.settle(-3, false).unwrap(),
            Settled::Drift { start: 5, side: Side::Right, stride: 1, steps: 5 }
        );
        for i in -8..12 {
            for (a, b) in [(3, -5), (-2, 7), (4, 4)] {
                let lhs = t.power(t.power(i, a).unwrap(), b).unwrap();
                assert_eq!(lhs, t.power(i, a + b).unwrap());
            }
        }
    }
}
