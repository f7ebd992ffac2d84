//! Young functions: evaluation, inversion, derivatives and the complementary
//! function.
//!
//! Only finite-valued, continuous, nondecreasing convex functions with
//! `Φ(0) = 0` and `Φ(x) → ∞` are represented. The builtin families are also
//! strictly increasing, which makes `Φ⁻¹` single valued; tables may carry a
//! flat zero segment at the origin (complementary functions do), in which case
//! [`YoungFunction::inverse`] is the generalized inverse `inf{x : Φ(x) ≥ y}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::{bisect, grow_until, shrink_until_false};

/// Natural-log magnitude beyond which `exp` would leave the normal f64 range.
const LN_SAFE: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Piecewise linear, extended by the last slope.
    Linear,
    /// Piecewise power law (linear in log-log coordinates), extended by the
    /// first and last exponents.
    LogLog,
}

/// Tabulated Young function through the origin and the points `(xs[i], ys[i])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    xs: Vec<f64>,
    ys: Vec<f64>,
    interpolation: Interpolation,
}

impl Table {
    /// Builds a linearly interpolated table and checks monotonicity,
    /// convexity (slopes nondecreasing from the origin) and unboundedness.
    ///
    /// A leading `(0, 0)` point is accepted and dropped.
    pub fn linear(xs: Vec<f64>, ys: Vec<f64>) -> Result<Table> {
        let (xs, ys) = strip_origin(xs, ys)?;
        let table = Table { xs, ys, interpolation: Interpolation::Linear };
        table.check_shape()?;
        let slopes = table.linear_slopes();
        for w in slopes.windows(2) {
            if w[1] < w[0] - 1e-12 * w[0].abs().max(1.0) {
                return Err(Error::InvalidYoung("table is not convex".into()));
            }
        }
        if *slopes.last().unwrap() <= 0.0 {
            return Err(Error::InvalidYoung("table must be unbounded (positive last slope)".into()));
        }
        Ok(table)
    }

    /// Builds a log-log interpolated table. All values must be positive.
    pub fn log_log(xs: Vec<f64>, ys: Vec<f64>) -> Result<Table> {
        let (xs, ys) = strip_origin(xs, ys)?;
        if xs.len() < 2 {
            return Err(Error::InvalidYoung("log-log table needs two points".into()));
        }
        if ys.iter().any(|&y| y <= 0.0) {
            return Err(Error::InvalidYoung("log-log table needs positive values".into()));
        }
        let table = Table { xs, ys, interpolation: Interpolation::LogLog };
        table.check_shape()?;
        if table.exponent(table.xs.len() - 2) <= 0.0 {
            return Err(Error::InvalidYoung("table must be unbounded".into()));
        }
        Ok(table)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    fn check_shape(&self) -> Result<()> {
        if self.xs.is_empty() {
            return Err(Error::InvalidYoung("empty table".into()));
        }
        if self.xs.iter().chain(&self.ys).any(|v| !v.is_finite()) {
            return Err(Error::InvalidYoung("table values must be finite".into()));
        }
        if self.xs[0] <= 0.0 || self.ys[0] < 0.0 {
            return Err(Error::InvalidYoung("table abscissae must be positive".into()));
        }
        for w in self.xs.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidYoung("table abscissae must increase".into()));
            }
        }
        for w in self.ys.windows(2) {
            if w[1] < w[0] {
                return Err(Error::InvalidYoung("table values must be nondecreasing".into()));
            }
        }
        Ok(())
    }

    fn linear_slopes(&self) -> Vec<f64> {
        let mut slopes = Vec::with_capacity(self.xs.len());
        slopes.push(self.ys[0] / self.xs[0]);
        for i in 1..self.xs.len() {
            slopes.push((self.ys[i] - self.ys[i - 1]) / (self.xs[i] - self.xs[i - 1]));
        }
        slopes
    }

    /// Power-law exponent of segment `i` (between points `i` and `i+1`).
    fn exponent(&self, i: usize) -> f64 {
        (self.ys[i + 1] / self.ys[i]).ln() / (self.xs[i + 1] / self.xs[i]).ln()
    }

    /// Index of the last table point `<= x`, or `None` when `x < xs[0]`.
    fn locate(&self, x: f64) -> Option<usize> {
        match self.xs.partition_point(|&t| t <= x) {
            0 => None,
            k => Some(k - 1),
        }
    }

    fn value(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let n = self.xs.len();
        match self.interpolation {
            Interpolation::Linear => match self.locate(x) {
                None => self.ys[0] * x / self.xs[0],
                Some(i) if i + 1 < n => {
                    let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
                    self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
                }
                Some(_) => {
                    let slope = self.linear_slopes()[n - 1];
                    self.ys[n - 1] + slope * (x - self.xs[n - 1])
                }
            },
            Interpolation::LogLog => {
                let seg = match self.locate(x) {
                    None => 0,
                    Some(i) => i.min(n - 2),
                };
                let anchor = if x < self.xs[0] { 0 } else { seg };
                self.ys[anchor] * (x / self.xs[anchor]).powf(self.exponent(seg))
            }
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        let n = self.xs.len();
        match self.interpolation {
            Interpolation::Linear => {
                let slopes = self.linear_slopes();
                match self.locate(x.max(0.0)) {
                    None => slopes[0],
                    Some(i) if i + 1 < n => slopes[i + 1],
                    Some(_) => slopes[n - 1],
                }
            }
            Interpolation::LogLog => {
                if x <= 0.0 {
                    return if self.exponent(0) > 1.0 { 0.0 } else { self.ys[0] / self.xs[0] };
                }
                let seg = match self.locate(x) {
                    None => 0,
                    Some(i) => i.min(n - 2),
                };
                self.exponent(seg) * self.value(x) / x
            }
        }
    }

    /// `ln Φ⁻¹(y)` for `y` far outside the normal range, from the extension
    /// laws at either end.
    fn ln_inverse_extreme(&self, ln_y: f64) -> f64 {
        let n = self.xs.len();
        match self.interpolation {
            Interpolation::Linear => {
                let slopes = self.linear_slopes();
                if ln_y < 0.0 {
                    ln_y - slopes[0].ln()
                } else {
                    ln_y - slopes[n - 1].ln()
                }
            }
            Interpolation::LogLog => {
                let (anchor, alpha) =
                    if ln_y < 0.0 { (0, self.exponent(0)) } else { (n - 1, self.exponent(n - 2)) };
                self.xs[anchor].ln() + (ln_y - self.ys[anchor].ln()) / alpha
            }
        }
    }
}

fn strip_origin(mut xs: Vec<f64>, mut ys: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidYoung("xs and ys differ in length".into()));
    }
    if !xs.is_empty() && xs[0] == 0.0 {
        if ys[0] != 0.0 {
            return Err(Error::InvalidYoung("table must pass through the origin".into()));
        }
        xs.remove(0);
        ys.remove(0);
    }
    Ok((xs, ys))
}

/// A Young function from one of the builtin families.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum YoungFunction {
    /// `x^p`, `p ≥ 1`.
    Power { p: f64 },
    /// `x^p / p`, `p ≥ 1`.
    PowerOverP { p: f64 },
    /// `e^x − 1`.
    ExpMinusOne,
    /// `x^p · ln(1 + x)`, `p ≥ 1`.
    PLog { p: f64 },
    Table(Table),
}

fn check_exponent(p: f64) -> Result<()> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidYoung(format!("exponent must be finite and >= 1, got {p}")));
    }
    Ok(())
}

impl YoungFunction {
    pub fn power(p: f64) -> Result<Self> {
        check_exponent(p)?;
        Ok(YoungFunction::Power { p })
    }

    pub fn power_over_p(p: f64) -> Result<Self> {
        check_exponent(p)?;
        Ok(YoungFunction::PowerOverP { p })
    }

    pub fn exp_minus_one() -> Self {
        YoungFunction::ExpMinusOne
    }

    pub fn p_log(p: f64) -> Result<Self> {
        check_exponent(p)?;
        Ok(YoungFunction::PLog { p })
    }

    /// Linearly interpolated table; must be strictly increasing and positive
    /// off the origin.
    pub fn table(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let t = Table::linear(xs, ys)?;
        if t.ys[0] <= 0.0 || t.ys.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidYoung("table must be strictly increasing".into()));
        }
        Ok(YoungFunction::Table(t))
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            YoungFunction::Power { .. } => "power",
            YoungFunction::PowerOverP { .. } => "power_over_p",
            YoungFunction::ExpMinusOne => "exp_minus_one",
            YoungFunction::PLog { .. } => "p_log",
            YoungFunction::Table(_) => "table",
        }
    }

    /// `Φ(x)` for `x ≥ 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::NegativeArgument(x));
        }
        Ok(self.value(x))
    }

    /// `Φ(|x|)`; the even extension.
    pub fn eval_abs(&self, x: f64) -> f64 {
        self.value(x.abs())
    }

    fn value(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        match self {
            YoungFunction::Power { p } => x.powf(*p),
            YoungFunction::PowerOverP { p } => x.powf(*p) / p,
            YoungFunction::ExpMinusOne => x.exp_m1(),
            YoungFunction::PLog { p } => x.powf(*p) * x.ln_1p(),
            YoungFunction::Table(t) => t.value(x),
        }
    }

    /// Right derivative `Φ'(x)` for `x ≥ 0`.
    pub fn derivative(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match self {
            YoungFunction::Power { p } | YoungFunction::PowerOverP { p } => {
                let scale = if matches!(self, YoungFunction::Power { .. }) { *p } else { 1.0 };
                if *p == 1.0 {
                    scale
                } else {
                    scale * x.powf(p - 1.0)
                }
            }
            YoungFunction::ExpMinusOne => x.exp(),
            YoungFunction::PLog { p } => {
                if x == 0.0 {
                    return 0.0;
                }
                p * x.powf(p - 1.0) * x.ln_1p() + x.powf(*p) / (1.0 + x)
            }
            YoungFunction::Table(t) => t.derivative(x),
        }
    }

    /// Exponent `q` with `Φ(tx) ≤ t^q Φ(x)` for all `t ≥ 1`, `x ≥ 0`, when known
    /// in closed form. Finite exactly when the function is globally Δ2.
    pub fn growth_index(&self) -> Option<f64> {
        match self {
            YoungFunction::Power { p } | YoungFunction::PowerOverP { p } => Some(*p),
            YoungFunction::PLog { p } => Some(p + 1.0),
            YoungFunction::ExpMinusOne | YoungFunction::Table(_) => None,
        }
    }

    /// Exponent `p` when `Φ` is a constant multiple of `x^p`.
    pub fn power_exponent(&self) -> Option<f64> {
        match self {
            YoungFunction::Power { p } | YoungFunction::PowerOverP { p } => Some(*p),
            _ => None,
        }
    }

    /// `Φ⁻¹(y)` for `y ≥ 0`. Closed form for the power families, otherwise
    /// bisection with geometric bracket growth.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if y < 0.0 || y.is_nan() {
            return Err(Error::NegativeArgument(y));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if y.is_infinite() {
            return Ok(f64::INFINITY);
        }
        Ok(match self {
            YoungFunction::Power { p } => y.powf(1.0 / p),
            YoungFunction::PowerOverP { p } => (p * y).powf(1.0 / p),
            _ => self.inverse_bisect(y),
        })
    }

    fn inverse_bisect(&self, y: f64) -> f64 {
        let reaches = |x: f64| self.value(x) >= y;
        let (lo, hi) = if reaches(1.0) {
            match shrink_until_false(0.5, f64::MIN_POSITIVE, reaches) {
                Some(lo) => (lo, 2.0 * lo),
                None => return 0.0,
            }
        } else {
            let hi = grow_until(2.0, f64::MAX / 4.0, reaches).unwrap_or(f64::MAX);
            (hi / 2.0, hi)
        };
        let b = bisect(lo, hi, 1e-17, 2000, reaches);
        let err_lo = (self.value(b.lo) - y).abs();
        let err_hi = (self.value(b.hi) - y).abs();
        if err_lo < err_hi {
            b.lo
        } else {
            b.hi
        }
    }

    /// `ln Φ⁻¹(e^{ln_y})`, valid far beyond the range where `e^{ln_y}` is a
    /// normal float.
    pub fn ln_inverse(&self, ln_y: f64) -> f64 {
        if ln_y == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        match self {
            YoungFunction::Power { p } => ln_y / p,
            YoungFunction::PowerOverP { p } => (p.ln() + ln_y) / p,
            _ if ln_y.abs() <= LN_SAFE => self.inverse_bisect(ln_y.exp()).ln(),
            YoungFunction::ExpMinusOne => {
                if ln_y < 0.0 {
                    ln_y
                } else {
                    ln_y.ln()
                }
            }
            YoungFunction::PLog { p } => {
                if ln_y < 0.0 {
                    ln_y / (p + 1.0)
                } else {
                    // x^p ln x = y  ⇔  p·u + ln u = ln_y with u = ln x
                    let g = |u: f64| p * u + u.ln() >= ln_y;
                    let hi = ln_y / p;
                    bisect(1.0, hi.max(2.0), 1e-16, 400, g).hi
                }
            }
            YoungFunction::Table(t) => t.ln_inverse_extreme(ln_y),
        }
    }

    /// Complementary function on the default grid. Closed form for
    /// `x^p/p` with `p > 1`.
    pub fn conjugate(&self) -> Result<Conjugate> {
        self.conjugate_with(&ConjugateGrid::default())
    }

    pub fn conjugate_with(&self, grid: &ConjugateGrid) -> Result<Conjugate> {
        if let YoungFunction::PowerOverP { p } = self {
            if *p > 1.0 {
                let q = p / (p - 1.0);
                return Ok(Conjugate {
                    function: YoungFunction::PowerOverP { p: q },
                    closed_form: true,
                    undetermined: Vec::new(),
                });
            }
        }
        self.conjugate_numeric(grid)
    }

    /// Complementary function tabulated on a log grid: for each grid `y` the
    /// supremum of the concave map `x ↦ xy − Φ(x)` is located by bisecting
    /// on the sign of its derivative `y − Φ'(x)`.
    pub fn conjugate_numeric(&self, grid: &ConjugateGrid) -> Result<Conjugate> {
        grid.validate()?;
        let mut xs = Vec::with_capacity(grid.points);
        let mut ys = Vec::with_capacity(grid.points);
        let mut undetermined = Vec::new();
        for y in grid.abscissae() {
            match self.legendre_at(y, grid.x_cap) {
                Some(v) => {
                    xs.push(y);
                    ys.push(v);
                }
                None => undetermined.push(y),
            }
        }
        if xs.len() < 2 {
            return Err(Error::InvalidYoung(
                "complementary function exceeds the evaluation cap on the whole grid".into(),
            ));
        }
        let table = if ys.iter().all(|&v| v > 0.0) {
            Table::log_log(xs, ys)?
        } else {
            let table = Table { xs, ys, interpolation: Interpolation::Linear };
            table.check_shape()?;
            table
        };
        Ok(Conjugate { function: YoungFunction::Table(table), closed_form: false, undetermined })
    }

    /// `sup_{0 ≤ x ≤ cap} (xy − Φ(x))`, or `None` when the maximizer lies
    /// beyond `cap`.
    pub fn legendre_at(&self, y: f64, cap: f64) -> Option<f64> {
        let h = |x: f64| x * y - self.value(x);
        if self.derivative(0.0) >= y {
            return Some(0.0);
        }
        let past = |x: f64| self.derivative(x) > y;
        let hi = grow_until(1e-12, cap, past)?;
        let lo = if hi <= 1e-12 { 0.0 } else { hi / 2.0 };
        let b = bisect(lo, hi, 1e-16, 2000, past);
        Some(h(b.lo).max(h(b.hi)).max(0.0))
    }
}

/// Log-spaced grid for tabulating the complementary function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugateGrid {
    pub y_min: f64,
    pub y_max: f64,
    pub points: usize,
    /// Largest `x` searched for the supremum.
    pub x_cap: f64,
}

impl Default for ConjugateGrid {
    fn default() -> Self {
        ConjugateGrid { y_min: 1e-4, y_max: 1e4, points: 161, x_cap: 1e8 }
    }
}

impl ConjugateGrid {
    fn validate(&self) -> Result<()> {
        if !(self.y_min > 0.0 && self.y_max > self.y_min && self.points >= 2 && self.x_cap > 0.0) {
            return Err(Error::DegenerateWindow(format!("{self:?}")));
        }
        Ok(())
    }

    pub fn abscissae(&self) -> impl Iterator<Item = f64> + '_ {
        let (a, b) = (self.y_min.ln(), self.y_max.ln());
        let n = self.points;
        (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
    }
}

/// A complementary function together with the grid points where the
/// supremum could not be located below the evaluation cap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conjugate {
    pub function: YoungFunction,
    pub closed_form: bool,
    pub undetermined: Vec<f64>,
}
