//! Modular, gauge norm, Amemiya (Orlicz) norm and the dual-grid oracle.
//!
//! All sums run over atoms in ascending order, so results do not depend on
//! how the caller built the function.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SimpleFunction;
use crate::search::{bisect, minimize_unimodal};
use crate::space::{AtomSet, MeasureSpace};
use crate::verdict::Status;
use crate::young::{ConjugateGrid, YoungFunction};

/// Largest support the dual-grid oracle accepts.
pub const DUAL_GRID_MAX_SUPPORT: usize = 6;

fn weights(space: &MeasureSpace, f: &SimpleFunction) -> Result<Vec<(f64, f64)>> {
    f.iter()
        .map(|(i, c)| {
            if !space.contains(i) {
                return Err(Error::WindowEscape(i));
            }
            Ok((space.weight(i)?, c.abs()))
        })
        .collect()
}

fn modular_of(phi: &YoungFunction, terms: &[(f64, f64)], k: f64) -> f64 {
    terms.iter().map(|&(mu, a)| mu * phi.eval_abs(k * a)).sum()
}

/// `ρ_Φ(f) = Σ μ(i) Φ(|f(i)|)`.
pub fn modular(space: &MeasureSpace, phi: &YoungFunction, f: &SimpleFunction) -> Result<f64> {
    Ok(modular_of(phi, &weights(space, f)?, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeNorm {
    pub value: f64,
    pub iterations: usize,
    /// `ρ_Φ(f / value)`; in `[1 − 1e−10, 1]` for nonzero `f`.
    pub residual: f64,
}

/// `N_Φ(f) = inf{k > 0 : ρ_Φ(f/k) ≤ 1}` by bisection on `k`.
///
/// The bracket comes from the one-atom norms `t_i = |f(i)| / Φ⁻¹(1/μ(i))`:
/// `ρ(f/max t_i) ≥ 1` and, by convexity, `ρ(f/Σ t_i) ≤ 1`.
pub fn gauge_norm(space: &MeasureSpace, phi: &YoungFunction, f: &SimpleFunction) -> Result<GaugeNorm> {
    if f.is_zero() {
        return Ok(GaugeNorm { value: 0.0, iterations: 0, residual: 0.0 });
    }
    let terms = weights(space, f)?;
    let mut lo: f64 = 0.0;
    let mut hi: f64 = 0.0;
    for &(mu, a) in &terms {
        let t = a / phi.inverse(1.0 / mu)?;
        lo = lo.max(t);
        hi += t;
    }
    let within = |k: f64| modular_of(phi, &terms, 1.0 / k) <= 1.0;
    while !within(hi) {
        hi *= 2.0;
    }
    while within(lo) && lo > f64::MIN_POSITIVE {
        lo *= 0.5;
    }
    let b = bisect(lo, hi, 1e-16, 400, within);
    Ok(GaugeNorm {
        value: b.hi,
        iterations: b.iterations,
        residual: modular_of(phi, &terms, 1.0 / b.hi),
    })
}

/// `N_Φ(χ_F) = 1 / Φ⁻¹(1/μ(F))`.
pub fn indicator_norm(space: &MeasureSpace, phi: &YoungFunction, set: &AtomSet) -> Result<f64> {
    let ln_mu = space.ln_measure(set)?;
    Ok((-phi.ln_inverse(-ln_mu)).exp())
}

/// Orlicz norm through the Amemiya formula `inf_{k>0} (1 + ρ_Φ(kf)) / k`,
/// minimized over `u = ln k` from `u₀ = −ln N_Φ(f)`.
///
/// When the infimum is only approached as `k → ∞` (linear growth), the
/// value at the far end of the expansion is returned.
pub fn amemiya_norm(space: &MeasureSpace, phi: &YoungFunction, f: &SimpleFunction) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    let terms = weights(space, f)?;
    let gauge = gauge_norm(space, phi, f)?.value;
    let objective = |u: f64| {
        let v = (1.0 + modular_of(phi, &terms, u.exp())) * (-u).exp();
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let m = minimize_unimodal(objective, -gauge.ln(), 0.5, 1e-12, 80);
    Ok(m.value)
}

/// Lower bound for `sup{Σ μ(i)|f(i)|g(i) : ρ_Ψ(g) ≤ 1}` from a simplex grid
/// of dual directions, each scaled onto the unit modular sphere of the
/// complementary function, followed by a pairwise mass-transfer search
/// around the best grid direction.
pub fn dual_grid_norm(space: &MeasureSpace, phi: &YoungFunction, f: &SimpleFunction) -> Result<f64> {
    dual_grid_norm_with(space, &dual_conjugate(phi)?, f)
}

/// The complementary function used by [`dual_grid_norm`], for reuse across
/// calls with the same `Φ`.
pub fn dual_conjugate(phi: &YoungFunction) -> Result<YoungFunction> {
    Ok(phi.conjugate_with(&DUAL_GRID)?.function)
}

/// [`dual_grid_norm`] with a precomputed complementary function `psi`.
pub fn dual_grid_norm_with(space: &MeasureSpace, psi: &YoungFunction, f: &SimpleFunction) -> Result<f64> {
    if f.len() > DUAL_GRID_MAX_SUPPORT {
        return Err(Error::SupportTooLarge { size: f.len(), limit: DUAL_GRID_MAX_SUPPORT });
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let terms = weights(space, f)?;
    let dual = DualProblem { psi, terms: &terms };
    let resolution = match terms.len() {
        1 | 2 => 64,
        3 => 24,
        4 => 12,
        5 => 8,
        _ => 6,
    };
    let mut best_dir = vec![0.0; terms.len()];
    let mut best = f64::NEG_INFINITY;
    for_each_composition(resolution, terms.len(), &mut |parts| {
        let dir: Vec<f64> = parts.iter().map(|&k| k as f64 / resolution as f64).collect();
        let v = dual.value(&dir, SEARCH_TOL);
        if v > best {
            best = v;
            best_dir = dir;
        }
    });

    let mut step = 1.0 / resolution as f64;
    while step > 1e-6 {
        let mut improved = false;
        for i in 0..terms.len() {
            for j in 0..terms.len() {
                if i == j || best_dir[i] < step {
                    continue;
                }
                let mut cand = best_dir.clone();
                cand[i] -= step;
                cand[j] += step;
                let v = dual.value(&cand, SEARCH_TOL);
                if v > best {
                    best = v;
                    best_dir = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(dual.value(&best_dir, 1e-12))
}

/// Linear interpolation overestimates a convex complementary function, so a
/// finer grid than the default tightens the bound.
const DUAL_GRID: ConjugateGrid = ConjugateGrid { y_min: 1e-4, y_max: 1e4, points: 1281, x_cap: 1e8 };

/// Relative bisection tolerance while comparing directions.
const SEARCH_TOL: f64 = 1e-10;

struct DualProblem<'a> {
    psi: &'a YoungFunction,
    terms: &'a [(f64, f64)],
}

impl DualProblem<'_> {
    fn dual_modular(&self, dir: &[f64], t: f64) -> f64 {
        self.terms.iter().zip(dir).map(|(&(mu, _), &d)| mu * self.psi.eval_abs(t * d)).sum()
    }

    /// Objective at the largest feasible scaling of `dir`.
    fn value(&self, dir: &[f64], tol: f64) -> f64 {
        let pairing: f64 = self.terms.iter().zip(dir).map(|(&(mu, a), &d)| mu * a * d).sum();
        if pairing == 0.0 {
            return 0.0;
        }
        let over = |t: f64| self.dual_modular(dir, t) > 1.0;
        let mut hi = 1.0;
        while !over(hi) {
            hi *= 2.0;
            if hi > 1e300 {
                return f64::INFINITY;
            }
        }
        let mut lo = hi;
        while over(lo) && lo > 1e-300 {
            lo *= 0.5;
        }
        // lo stays on the feasible side
        let t = bisect(lo, hi, tol, 200, over).lo;
        t * pairing
    }
}

/// Calls `visit` with every vector of `len` nonnegative integers summing to `total`.
fn for_each_composition(total: usize, len: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(rest: usize, slot: usize, parts: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if slot + 1 == parts.len() {
            parts[slot] = rest;
            visit(parts);
            return;
        }
        for k in 0..=rest {
            parts[slot] = k;
            rec(rest - k, slot + 1, parts, visit);
        }
    }
    let mut parts = vec![0; len];
    rec(total, 0, &mut parts, visit);
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub gauge: f64,
    pub amemiya: f64,
    pub dual_grid: Option<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Gauge and Amemiya norms, plus the dual-grid bound when the support is
/// small enough and `with_dual` is set.
pub fn norm_report(space: &MeasureSpace, phi: &YoungFunction, f: &SimpleFunction, with_dual: bool) -> Result<NormReport> {
    let g = gauge_norm(space, phi, f)?;
    let amemiya = amemiya_norm(space, phi, f)?;
    let dual_grid = if with_dual && f.len() <= DUAL_GRID_MAX_SUPPORT {
        Some(dual_grid_norm(space, phi, f)?)
    } else {
        None
    };
    Ok(NormReport { gauge: g.value, amemiya, dual_grid, iterations: g.iterations, residual: g.residual })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `N_Φ(f_n − f)`.
    pub norm_deviation: Vec<f64>,
    /// `|ρ_Φ(f_n) − ρ_Φ(f)|`.
    pub modular_deviation: Vec<f64>,
    /// `max |f_n(i) − f(i)|` over the fixed atoms `S(f) ∪ S(f_1)`.
    pub pointwise_deviation: Vec<f64>,
    pub norm_to_zero: bool,
    pub modular_to_zero: bool,
    pub pointwise_to_zero: bool,
    pub delta2: Status,
    /// Norm convergence implies modular convergence, and under Δ2 modular
    /// plus pointwise convergence imply norm convergence.
    pub consistent: bool,
}

/// Finite-sequence proxy for "tends to zero": the last value is below
/// `tol` and the last quarter below `sqrt(tol)`, both relative to the scale.
/// Sign changes of a signed deviation make `|·|` dip to zero, so the tail
/// is bounded by its envelope rather than required to be monotone.
pub fn tends_to_zero(seq: &[f64], tol: f64) -> bool {
    let Some(&last) = seq.last() else { return false };
    let scale = seq.iter().fold(1.0f64, |m, &v| m.max(v));
    let quarter = seq[seq.len() - seq.len().div_ceil(4)..].iter().fold(0.0f64, |m, &v| m.max(v));
    last <= tol * scale && quarter <= tol.sqrt() * scale
}

pub fn modular_convergence_check(
    space: &MeasureSpace,
    phi: &YoungFunction,
    sequence: &[SimpleFunction],
    f: &SimpleFunction,
    delta2: Status,
    tol: f64,
) -> Result<ConvergenceReport> {
    let rho_f = modular(space, phi, f)?;
    let mut probe_atoms = f.support();
    if let Some(first) = sequence.first() {
        probe_atoms.extend(first.support());
    }
    let mut norm_deviation = Vec::with_capacity(sequence.len());
    let mut modular_deviation = Vec::with_capacity(sequence.len());
    let mut pointwise_deviation = Vec::with_capacity(sequence.len());
    for fn_ in sequence {
        norm_deviation.push(gauge_norm(space, phi, &fn_.sub(f))?.value);
        modular_deviation.push((modular(space, phi, fn_)? - rho_f).abs());
        let diff = fn_.sub(f);
        pointwise_deviation.push(probe_atoms.iter().fold(0.0, |m: f64, &i| m.max(diff.get(i).abs())));
    }
    let norm_to_zero = tends_to_zero(&norm_deviation, tol);
    let modular_to_zero = tends_to_zero(&modular_deviation, tol);
    let pointwise_to_zero = tends_to_zero(&pointwise_deviation, tol);
    let forward = !norm_to_zero || modular_to_zero;
    let converse = delta2 != Status::Holds || !(modular_to_zero && pointwise_to_zero) || norm_to_zero;
    Ok(ConvergenceReport {
        norm_deviation,
        modular_deviation,
        pointwise_deviation,
        norm_to_zero,
        modular_to_zero,
        pointwise_to_zero,
        delta2,
        consistent: forward && converse,
    })
}
