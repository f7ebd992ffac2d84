//! Δ2 and Δ′ certificates on finite log grids.
//!
//! Builtin families carry closed-form global claims; tables are judged from
//! grid evidence inside their data range. A window that is valid but too
//! short (fewer than [`MIN_POINTS`] points or [`MIN_DECADES`] decades) yields
//! `Undetermined`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::verdict::Status;
use crate::young::YoungFunction;

pub const MIN_POINTS: usize = 64;
pub const MIN_DECADES: f64 = 6.0;
/// The trend test looks at grid points within this many decades of the
/// upper window edge.
const TAIL_DECADES: f64 = 2.0;
const FLAT_TOL: f64 = 1e-12;

/// Log-spaced grid `[x_min, x_max]` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Window> {
        let w = Window { x_min, x_max, points };
        w.validate()?;
        Ok(w)
    }

    pub fn delta2_default() -> Window {
        Window { x_min: 1e-3, x_max: 1e3, points: 64 }
    }

    pub fn delta_prime_default() -> Window {
        Window { x_min: 1.0, x_max: 1e6, points: 64 }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.x_min.is_finite()
            && self.x_max.is_finite()
            && self.x_min > 0.0
            && self.x_max >= self.x_min
            && self.points > 0
            && (self.points == 1) == (self.x_max == self.x_min);
        if ok {
            Ok(())
        } else {
            Err(Error::DegenerateWindow(format!(
                "[{}, {}] with {} points",
                self.x_min, self.x_max, self.points
            )))
        }
    }

    pub fn decades(&self) -> f64 {
        (self.x_max / self.x_min).log10()
    }

    /// Why the window cannot support a decision, if it cannot.
    pub fn insufficiency(&self) -> Option<String> {
        if self.points < MIN_POINTS {
            Some(format!("window has {} points, need {MIN_POINTS}", self.points))
        } else if self.decades() < MIN_DECADES - 1e-9 {
            Some(format!("window spans {:.3} decades, need {MIN_DECADES}", self.decades()))
        } else {
            None
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.x_min];
        }
        let (a, b) = (self.x_min.ln(), self.x_max.ln());
        let n = self.points - 1;
        (0..=n).map(|i| (a + (b - a) * i as f64 / n as f64).exp()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaCondition {
    /// `Φ(2x) ≤ K Φ(x)` for `x ≥ x₀`.
    Delta2,
    /// `Φ(xy) ≤ c Φ(x) Φ(y)` for `x, y ≥ x₀`.
    DeltaPrime,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaCertificate {
    pub condition: DeltaCondition,
    pub status: Status,
    /// `K` (Δ2) or `c` (Δ′) when the condition holds.
    pub constant: Option<f64>,
    pub x0: Option<f64>,
    pub closed_form: bool,
    /// Window the evidence was collected on.
    pub window: Window,
    /// `(x, ratio)` on the grid; for Δ′ the ratio is the row maximum over `y`.
    pub evidence: Vec<(f64, f64)>,
    pub note: String,
}

impl DeltaCertificate {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

pub fn check_delta2(phi: &YoungFunction, window: &Window) -> Result<DeltaCertificate> {
    check(phi, window, DeltaCondition::Delta2)
}

pub fn check_delta_prime(phi: &YoungFunction, window: &Window) -> Result<DeltaCertificate> {
    check(phi, window, DeltaCondition::DeltaPrime)
}

fn closed_form(phi: &YoungFunction, condition: DeltaCondition) -> Option<(Status, Option<f64>, Option<f64>)> {
    use DeltaCondition::*;
    Some(match (phi, condition) {
        (YoungFunction::Power { p }, Delta2) | (YoungFunction::PowerOverP { p }, Delta2) => {
            (Status::Holds, Some(2f64.powf(*p)), Some(0.0))
        }
        (YoungFunction::Power { .. }, DeltaPrime) => (Status::Holds, Some(1.0), Some(0.0)),
        (YoungFunction::PowerOverP { p }, DeltaPrime) => (Status::Holds, Some(*p), Some(0.0)),
        // ln(1+2x) ≤ 2 ln(1+x)
        (YoungFunction::PLog { p }, Delta2) => (Status::Holds, Some(2f64.powf(p + 1.0)), Some(0.0)),
        // ln(1+xy) ≤ ln(1+x) + ln(1+y) ≤ (2/ln 2) ln(1+x) ln(1+y) for x, y ≥ 1
        (YoungFunction::PLog { .. }, DeltaPrime) => {
            (Status::Holds, Some(2.0 / std::f64::consts::LN_2), Some(1.0))
        }
        (YoungFunction::ExpMinusOne, _) => (Status::Fails, None, None),
        (YoungFunction::Table(_), _) => return None,
    })
}

fn check(phi: &YoungFunction, window: &Window, condition: DeltaCondition) -> Result<DeltaCertificate> {
    window.validate()?;
    let mut effective = *window;
    let mut note = String::new();
    if let YoungFunction::Table(t) = phi {
        let hi = match condition {
            DeltaCondition::Delta2 => t.xs()[t.xs().len() - 1] / 2.0,
            DeltaCondition::DeltaPrime => t.xs()[t.xs().len() - 1],
        };
        effective.x_min = window.x_min.max(t.xs()[0]);
        effective.x_max = window.x_max.min(hi);
        if effective.x_max < effective.x_min {
            return Ok(undetermined(condition, *window, "window does not meet the table data".into()));
        }
        if effective.x_max == effective.x_min {
            effective.points = 1;
        }
        note = "window restricted to the table data".into();
    }
    if let Some(reason) = effective.insufficiency() {
        return Ok(undetermined(condition, effective, reason));
    }

    let evidence = grid_ratios(phi, &effective, condition);
    if let Some((status, constant, x0)) = closed_form(phi, condition) {
        return Ok(DeltaCertificate {
            condition,
            status,
            constant,
            x0,
            closed_form: true,
            window: effective,
            evidence,
            note: "closed form for the family; grid ratios attached".into(),
        });
    }

    let (status, trend_note) = trend(&evidence, effective.x_max);
    let constant = (status == Status::Holds)
        .then(|| evidence.iter().map(|e| e.1).fold(0.0, f64::max));
    Ok(DeltaCertificate {
        condition,
        status,
        constant,
        x0: (status == Status::Holds).then_some(effective.x_min),
        closed_form: false,
        window: effective,
        evidence,
        note: join(note, trend_note),
    })
}

fn join(a: String, b: String) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b,
        (_, true) => a,
        _ => format!("{a}; {b}"),
    }
}

fn undetermined(condition: DeltaCondition, window: Window, note: String) -> DeltaCertificate {
    DeltaCertificate {
        condition,
        status: Status::Undetermined,
        constant: None,
        x0: None,
        closed_form: false,
        window,
        evidence: Vec::new(),
        note,
    }
}

fn grid_ratios(phi: &YoungFunction, window: &Window, condition: DeltaCondition) -> Vec<(f64, f64)> {
    let nodes = window.nodes();
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { f64::INFINITY };
    match condition {
        DeltaCondition::Delta2 => nodes
            .iter()
            .map(|&x| (x, ratio(phi.eval_abs(2.0 * x), phi.eval_abs(x))))
            .collect(),
        DeltaCondition::DeltaPrime => nodes
            .iter()
            .map(|&x| {
                let fx = phi.eval_abs(x);
                let row = nodes
                    .iter()
                    .map(|&y| ratio(phi.eval_abs(x * y), fx * phi.eval_abs(y)))
                    .fold(0.0, |m: f64, r| if r.is_nan() { f64::INFINITY } else { m.max(r) });
                (x, row)
            })
            .collect(),
    }
}

/// Classifies the ratio sequence over the last [`TAIL_DECADES`] decades:
/// non-increasing gives `Holds`, accelerating increase (or overflow) gives
/// `Fails`, anything else `Undetermined`.
fn trend(evidence: &[(f64, f64)], x_max: f64) -> (Status, String) {
    let cut = x_max / 10f64.powf(TAIL_DECADES);
    let tail: Vec<f64> = evidence.iter().filter(|e| e.0 >= cut * (1.0 - 1e-12)).map(|e| e.1).collect();
    if tail.len() < 3 {
        return (Status::Undetermined, "too few points in the tail".into());
    }
    if tail.iter().any(|r| !r.is_finite()) {
        return (Status::Fails, "ratio overflows in the tail".into());
    }
    let non_increasing = tail.windows(2).all(|w| w[1] <= w[0] * (1.0 + FLAT_TOL));
    if non_increasing {
        return (Status::Holds, "ratio non-increasing over the last two decades".into());
    }
    let steps: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = steps.iter().all(|&d| d > 0.0);
    let accelerating = steps.windows(2).all(|w| w[1] >= w[0] * (1.0 - FLAT_TOL));
    if increasing && accelerating {
        (Status::Fails, "ratio increases without deceleration over the last two decades".into())
    } else {
        (Status::Undetermined, "ratio neither settles nor diverges on the window".into())
    }
}
