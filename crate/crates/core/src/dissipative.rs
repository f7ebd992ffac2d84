//! Dissipative decompositions `X = ⊔_k φ^k(W)` and the distortion
//! constants attached to a generator `W`.
//!
//! Distortion estimates are evidence only: they bound any valid constant
//! from below on the evaluated subsets and shifts.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::space::{log_sum_exp, AtomSet};
use crate::system::{Direction, System};
use crate::tail::TailModel;
use crate::transform::{Settled, Transform};
use crate::verdict::Status;

/// Generators larger than this are sampled, never enumerated.
pub const EXHAUSTIVE_LIMIT: usize = 12;
const MAX_GENERATOR: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetSpec {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DissipativeSpec {
    pub generator: AtomSet,
    /// `K₀`: images `φ^k(W)` are checked for `|k| ≤ K₀`.
    pub k_window: i64,
    pub subsets: SubsetSpec,
}

impl DissipativeSpec {
    pub fn new(generator: AtomSet) -> Self {
        DissipativeSpec { generator, k_window: 64, subsets: SubsetSpec::Exhaustive }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DissipativeCertificate {
    pub status: Status,
    pub disjoint: Status,
    /// `None` for the wandering check, which skips coverage.
    pub covered: Option<Status>,
    pub witness: Option<i64>,
    pub k_window: i64,
    /// Atoms examined for coverage.
    pub checked: Option<(i64, i64)>,
    pub note: String,
}

fn generator_vec(system: &System, w: &AtomSet) -> Result<Vec<i64>> {
    if w.is_empty() {
        return Err(Error::EmptySet);
    }
    if w.len() > MAX_GENERATOR {
        return Err(Error::InvalidArgument(format!("generator has {} atoms, limit {MAX_GENERATOR}", w.len())));
    }
    let ln_mu = system.space.ln_measure(w)?;
    if !ln_mu.is_finite() {
        return Err(Error::InvalidArgument("generator measure must be positive and finite".into()));
    }
    Ok(w.iter().copied().collect())
}

/// First atom of `φ^n(W) ∩ W` for `1 ≤ n ≤ 2K₀`.
fn first_overlap(system: &System, w: &AtomSet, k0: i64) -> Result<Option<i64>> {
    for n in 1..=2 * k0.max(0) {
        for &a in w {
            let b = system.transform.power(a, n)?;
            if w.contains(&b) {
                return Ok(Some(b));
            }
        }
    }
    Ok(None)
}

/// `{φ⁻ⁿ(W)}` pairwise disjoint for `|n| ≤ K₀`.
pub fn wandering_check(system: &System, w: &AtomSet, k0: i64) -> Result<DissipativeCertificate> {
    generator_vec(system, w)?;
    let overlap = first_overlap(system, w, k0)?;
    let status = Status::from_bool(overlap.is_none());
    Ok(DissipativeCertificate {
        status,
        disjoint: status,
        covered: None,
        witness: overlap,
        k_window: k0,
        checked: None,
        note: String::new(),
    })
}

/// Disjointness of `φ^k(W)` for `|k| ≤ K₀` and coverage of every window atom
/// within `K₀` of `W`.
pub fn verify_dissipative(system: &System, w: &AtomSet, k0: i64) -> Result<DissipativeCertificate> {
    let gen = generator_vec(system, w)?;
    let overlap = first_overlap(system, w, k0)?;
    let disjoint = Status::from_bool(overlap.is_none());
    let (wlo, whi) = system.space.window();
    let lo = (gen[0] - k0).max(wlo);
    let hi = (gen[gen.len() - 1] + k0).min(whi);
    let mut uncovered = None;
    for a in lo..=hi {
        if !covered(&system.transform, w, a, k0)? {
            uncovered = Some(a);
            break;
        }
    }
    let covered = Status::from_bool(uncovered.is_none());
    let mut note = String::new();
    if let Some(a) = uncovered {
        note = format!("atom {a} lies in no image of the generator");
    } else if let Some(b) = overlap {
        note = format!("atom {b} lies in two images of the generator");
    }
    Ok(DissipativeCertificate {
        status: disjoint.and(covered),
        disjoint,
        covered: Some(covered),
        witness: uncovered.or(overlap),
        k_window: k0,
        checked: Some((lo, hi)),
        note,
    })
}

/// Whether `a ∈ φ^k(W)` for some `k ∈ ℤ`. Orbits are followed until they
/// hit `W`, close up, or drift past every atom of `W`.
fn covered(t: &Transform, w: &AtomSet, a: i64, k0: i64) -> Result<bool> {
    let (wmin, wmax) = (*w.first().unwrap(), *w.last().unwrap());
    if let Transform::Shift { step } = *t {
        return Ok(if step == 0 {
            w.contains(&a)
        } else {
            w.iter().any(|&x| (a - x).rem_euclid(step.abs()) == 0)
        });
    }
    for backward in [true, false] {
        let mut x = a;
        for _ in 0..=k0 {
            if w.contains(&x) {
                return Ok(true);
            }
            x = if backward { t.inverse(x)? } else { t.forward(x)? };
        }
        let steps_left = match t.settle(x, backward)? {
            Settled::Cycle { period } => period,
            Settled::Drift { steps, .. } => {
                let region = t.table_region().unwrap_or((x, x));
                let span = (wmax.max(region.1) - wmin.min(region.0)).unsigned_abs();
                steps + span + (x - wmin).unsigned_abs() + (x - wmax).unsigned_abs() + 1
            }
        };
        for _ in 0..=steps_left {
            if w.contains(&x) {
                return Ok(true);
            }
            x = if backward { t.inverse(x)? } else { t.forward(x)? };
        }
    }
    Ok(false)
}

/// `a_k = Φ⁻¹(1/μ(φ^k(W)))`, stored as logarithms on a contiguous range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSequence {
    pub k_lo: i64,
    pub k_hi: i64,
    pub ln_a: Vec<f64>,
}

impl RatioSequence {
    pub fn ln_a(&self, k: i64) -> Option<f64> {
        if k < self.k_lo || k > self.k_hi {
            return None;
        }
        self.ln_a.get((k - self.k_lo) as usize).copied()
    }

    pub fn a(&self, k: i64) -> Option<f64> {
        self.ln_a(k).map(f64::exp)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        (self.k_lo..).zip(self.ln_a.iter().map(|v| v.exp()))
    }
}

/// `a_k` for `k` in `range`, truncated to the contiguous stretch around
/// `k = 0` where the weights are available.
pub fn ratio_sequence(system: &System, w: &AtomSet, range: std::ops::RangeInclusive<i64>) -> Result<RatioSequence> {
    generator_vec(system, w)?;
    let (lo, hi) = (*range.start(), *range.end());
    if lo > 0 || hi < 0 {
        return Err(Error::InvalidArgument("ratio range must contain 0".into()));
    }
    let ln_a_at = |k: i64| -> Option<f64> {
        let ln_mu = system.ln_orbit_measure(w, k).ok()?;
        Some(system.phi.ln_inverse(-ln_mu))
    };
    let mut right = Vec::new();
    for k in 0..=hi {
        match ln_a_at(k) {
            Some(v) => right.push(v),
            None => break,
        }
    }
    let mut left = Vec::new();
    for k in (lo..0).rev() {
        match ln_a_at(k) {
            Some(v) => left.push(v),
            None => break,
        }
    }
    let k_lo = -(left.len() as i64);
    left.reverse();
    left.extend(right);
    let k_hi = k_lo + left.len() as i64 - 1;
    Ok(RatioSequence { k_lo, k_hi, ln_a: left })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionEstimate {
    /// `K̂` or `Ĥ`, at least 1.
    pub value: f64,
    pub k_range: (i64, i64),
    pub subsets_evaluated: usize,
    pub exhaustive: bool,
    /// Subset (as atoms) and shift attaining the value.
    pub witness: Option<(Vec<i64>, i64)>,
    /// Always true: the estimate is a lower bound from finite evidence.
    pub evidence_only: bool,
}

/// Nonempty subsets of an `n`-atom generator as bitmasks, singletons and
/// the full set first.
fn subset_masks(n: usize, spec: SubsetSpec) -> Result<(Vec<u64>, bool)> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let total = full as u128;
    let mut masks: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    if n > 1 {
        masks.push(full);
    }
    match spec {
        SubsetSpec::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::InvalidArgument(format!(
                    "exhaustive subsets need at most {EXHAUSTIVE_LIMIT} generator atoms, got {n}"
                )));
            }
            Ok(((1..=full).collect(), true))
        }
        SubsetSpec::Sample { count, .. } if count as u128 >= total => Ok(((1..=full).collect(), true)),
        SubsetSpec::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen: HashSet<u64> = masks.iter().copied().collect();
            if n <= 24 {
                for i in index::sample(&mut rng, full as usize, count) {
                    if seen.insert(i as u64 + 1) {
                        masks.push(i as u64 + 1);
                    }
                }
            } else {
                while seen.len() < count + n + 1 {
                    let m = rng.gen::<u64>() & full;
                    if m != 0 && seen.insert(m) {
                        masks.push(m);
                    }
                }
            }
            Ok((masks, false))
        }
    }
}

/// `ln R_k(F)` for every subset mask and `k ∈ [−K, K]`, with
/// `R_k(F) = N_Φ(C_φ^k χ_F) / N_Φ(χ_F)`.
struct RatioTable {
    k: i64,
    masks: Vec<u64>,
    full_row: usize,
    /// `rows[m][k + K]`.
    rows: Vec<Vec<f64>>,
}

impl RatioTable {
    fn build(system: &System, gen: &[i64], masks: Vec<u64>, k: i64) -> Result<RatioTable> {
        // ln μ(φ^{-j}{a}) per atom and shift
        let mut ln_mu = vec![vec![0.0; (2 * k + 1) as usize]; gen.len()];
        for (i, &a) in gen.iter().enumerate() {
            for j in -k..=k {
                let b = system.transform.power(a, -j)?;
                if !system.space.contains(b) {
                    return Err(Error::WindowEscape(b));
                }
                ln_mu[i][(j + k) as usize] = system.space.ln_weight(b)?;
            }
        }
        let full = masks.iter().copied().max().unwrap_or(0);
        let mut rows = Vec::with_capacity(masks.len());
        let mut terms = Vec::with_capacity(gen.len());
        for &m in &masks {
            let mut row = Vec::with_capacity((2 * k + 1) as usize);
            let ln_at = |col: usize, terms: &mut Vec<f64>| {
                terms.clear();
                terms.extend((0..gen.len()).filter(|i| m >> i & 1 == 1).map(|i| ln_mu[i][col]));
                log_sum_exp(terms)
            };
            let base = system.phi.ln_inverse(-ln_at(k as usize, &mut terms));
            for col in 0..(2 * k + 1) as usize {
                row.push(base - system.phi.ln_inverse(-ln_at(col, &mut terms)));
            }
            rows.push(row);
        }
        let full_row = masks.iter().position(|&m| m == full).unwrap();
        Ok(RatioTable { k, masks, full_row, rows })
    }

    fn ln_r(&self, row: usize, j: i64) -> f64 {
        self.rows[row][(j + self.k) as usize]
    }

    fn atoms(&self, row: usize, gen: &[i64]) -> Vec<i64> {
        (0..gen.len()).filter(|i| self.masks[row] >> i & 1 == 1).map(|i| gen[i]).collect()
    }
}

fn prepare(system: &System, w: &AtomSet, k: i64, spec: SubsetSpec) -> Result<(Vec<i64>, RatioTable, bool)> {
    if k < 0 {
        return Err(Error::InvalidArgument(format!("negative shift range {k}")));
    }
    let gen = generator_vec(system, w)?;
    let (masks, exhaustive) = subset_masks(gen.len(), spec)?;
    let table = RatioTable::build(system, &gen, masks, k)?;
    Ok((gen, table, exhaustive))
}

/// `K̂ = max |ln R_k(F) − ln R_k(W)|` exponentiated, over `|k| ≤ K`.
pub fn distortion_constant(system: &System, w: &AtomSet, k: i64, spec: SubsetSpec) -> Result<DistortionEstimate> {
    let (gen, table, exhaustive) = prepare(system, w, k, spec)?;
    Ok(distortion_from(&gen, &table, exhaustive))
}

fn distortion_from(gen: &[i64], table: &RatioTable, exhaustive: bool) -> DistortionEstimate {
    let mut best = (0.0f64, None);
    for row in 0..table.masks.len() {
        for j in -table.k..=table.k {
            let d = (table.ln_r(row, j) - table.ln_r(table.full_row, j)).abs();
            if d > best.0 {
                best = (d, Some((table.atoms(row, gen), j)));
            }
        }
    }
    DistortionEstimate {
        value: best.0.exp(),
        k_range: (-table.k, table.k),
        subsets_evaluated: table.masks.len(),
        exhaustive,
        witness: best.1,
        evidence_only: true,
    }
}

/// `Ĥ` over `s, t ∈ [−K/2, K/2]`: the smallest constant for which the
/// two-parameter comparison of `N_Φ(C_φ^{t+s} χ_F) / N_Φ(C_φ^s χ_F)` with
/// the same ratio for `W` holds on the evidence.
pub fn generalized_distortion(system: &System, w: &AtomSet, k: i64, spec: SubsetSpec) -> Result<DistortionEstimate> {
    let (gen, table, exhaustive) = prepare(system, w, k, spec)?;
    Ok(generalized_from(&gen, &table, exhaustive))
}

fn generalized_from(gen: &[i64], table: &RatioTable, exhaustive: bool) -> DistortionEstimate {
    let half = table.k / 2;
    let mut best = (0.0f64, None);
    for row in 0..table.masks.len() {
        let dev = |j: i64| table.ln_r(row, j) - table.ln_r(table.full_row, j);
        for s in -half..=half {
            for t in -half..=half {
                let d = (dev(t + s) - dev(s)).abs();
                if d > best.0 {
                    best = (d, Some((table.atoms(row, gen), t)));
                }
            }
        }
    }
    DistortionEstimate {
        value: best.0.exp(),
        k_range: (-half, half),
        subsets_evaluated: table.masks.len(),
        exhaustive,
        witness: best.1,
        evidence_only: true,
    }
}

/// Tail-model verdict on bounded distortion: the per-atom orbit measures of
/// `W` must share one geometric rate on each side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedDistortion {
    pub status: Status,
    pub note: String,
}

pub fn bounded_distortion(system: &System, w: &AtomSet) -> BoundedDistortion {
    if w.len() == 1 {
        return BoundedDistortion { status: Status::Holds, note: "singleton generator".into() };
    }
    let finite_index = system.phi.growth_index().is_some();
    let mut status = Status::Holds;
    let mut notes = Vec::new();
    for dir in [Direction::Backward, Direction::Forward] {
        let ratios: Option<Vec<f64>> = w.iter().map(|&a| system.orbit_tail(a, dir).and_then(|t| t.ratio())).collect();
        let side = match ratios {
            None => {
                notes.push(format!("{dir:?} orbit tails not all geometric"));
                Status::Undetermined
            }
            Some(r) if r.iter().all(|&x| (x / r[0]).ln().abs() <= 1e-12) => Status::Holds,
            Some(r) if finite_index => {
                notes.push(format!("{dir:?} orbit rates differ across the generator: {r:?}"));
                Status::Fails
            }
            Some(_) => {
                notes.push(format!("{dir:?} orbit rates differ but Φ has no finite growth index"));
                Status::Undetermined
            }
        };
        status = status.and(side);
    }
    BoundedDistortion { status, note: notes.join("; ") }
}

/// A verified generator with its distortion evidence and orbit tails.
#[derive(Debug, Clone, Serialize)]
pub struct DissipativeStructure {
    pub generator: AtomSet,
    pub k_window: i64,
    pub subsets: SubsetSpec,
    pub certificate: DissipativeCertificate,
    pub distortion: DistortionEstimate,
    pub generalized: DistortionEstimate,
    pub bounded_distortion: BoundedDistortion,
    /// Tail of `k ↦ μ(φ^k(W))` as `k → −∞`.
    pub backward_tail: Option<TailModel>,
    /// Tail of `k ↦ μ(φ^k(W))` as `k → +∞`.
    pub forward_tail: Option<TailModel>,
}

impl DissipativeStructure {
    /// Fails when the decomposition is refuted on the verification window.
    pub fn build(system: &System, spec: &DissipativeSpec) -> Result<DissipativeStructure> {
        let certificate = verify_dissipative(system, &spec.generator, spec.k_window)?;
        if certificate.status == Status::Fails {
            return Err(Error::Precondition(format!("not a dissipative generator: {}", certificate.note)));
        }
        let (gen, table, exhaustive) = prepare(system, &spec.generator, spec.k_window, spec.subsets)?;
        let distortion = distortion_from(&gen, &table, exhaustive);
        let generalized = generalized_from(&gen, &table, exhaustive);
        debug_assert!(generalized.value <= distortion.value.powi(2) * (1.0 + 1e-9));
        Ok(DissipativeStructure {
            generator: spec.generator.clone(),
            k_window: spec.k_window,
            subsets: spec.subsets,
            certificate,
            distortion,
            generalized,
            bounded_distortion: bounded_distortion(system, &spec.generator),
            backward_tail: system.set_orbit_tail(&spec.generator, Direction::Backward),
            forward_tail: system.set_orbit_tail(&spec.generator, Direction::Forward),
        })
    }

    pub fn ratio_sequence(&self, system: &System, range: std::ops::RangeInclusive<i64>) -> Result<RatioSequence> {
        ratio_sequence(system, &self.generator, range)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::indicator_norm;
    use crate::space::{atoms, MeasureSpace};
    use crate::young::YoungFunction;
    use approx::assert_relative_eq;

    fn sys(space: MeasureSpace, step: i64) -> System {
        System::new(space, Transform::shift(step), YoungFunction::power(2.0).unwrap()).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let s1 = sys(MeasureSpace::geometric(0.5, -128, 128).unwrap(), 1);
        assert_eq!(verify_dissipative(&s1, &atoms(&[0]), 64).unwrap().status, Status::Holds);
        let s2 = sys(MeasureSpace::geometric(0.5, -128, 128).unwrap(), 2);
        let odd = verify_dissipative(&s2, &atoms(&[0]), 64).unwrap();
        assert_eq!(odd.status, Status::Fails);
        assert_eq!(odd.witness.map(|a| a.rem_euclid(2)), Some(1));
        assert_eq!(verify_dissipative(&s2, &atoms(&[0, 1]), 64).unwrap().status, Status::Holds);
        assert_eq!(wandering_check(&s2, &atoms(&[0, 1]), 64).unwrap().status, Status::Holds);
        let id = sys(MeasureSpace::geometric(0.5, -128, 128).unwrap(), 0);
        assert_eq!(wandering_check(&id, &atoms(&[0]), 64).unwrap().status, Status::Fails);
        assert_eq!(verify_dissipative(&s1, &AtomSet::new(), 64), Err(Error::EmptySet));
    }

    #[test]
    fn table_coverage() {
        // swaps 0 and 1, shift by 1 elsewhere: {0} misses nothing, {5} misses nothing
        let map = [(0, 1), (1, 0)].into_iter().collect();
        let t = Transform::table(map, crate::transform::OffWindow::Reject).unwrap();
        let s = System::new(
            MeasureSpace::geometric(0.5, 0, 1).unwrap(),
            t,
            YoungFunction::power(2.0).unwrap(),
        )
        .unwrap();
        // φ²(W) = W
        assert_eq!(verify_dissipative(&s, &atoms(&[0]), 4).unwrap().disjoint, Status::Fails);

        let map = [(0, 2), (1, 1), (2, 3)].into_iter().collect();
        let t = Transform::table(map, crate::transform::OffWindow::ExtendByShift { step: 1 }).unwrap();
        let s = System::new(MeasureSpace::geometric(0.5, -40, 40).unwrap(), t, YoungFunction::power(2.0).unwrap())
            .unwrap();
        let c = verify_dissipative(&s, &atoms(&[0]), 8).unwrap();
        assert_eq!(c.covered, Some(Status::Fails));
        assert_eq!(c.witness, Some(1));
        assert_eq!(verify_dissipative(&s, &atoms(&[0, 1]), 8).unwrap().disjoint, Status::Fails);
    }

    #[test]
    fn ratio_sequence_examples() {
        let s = sys(MeasureSpace::geometric(0.5, -64, 64).unwrap(), 1);
        let a = ratio_sequence(&s, &atoms(&[0]), -8..=8).unwrap();
        assert_relative_eq!(a.a(4).unwrap(), 4.0, max_relative = 1e-12);
        let two = sys(MeasureSpace::two_sided_exp(2.0, -64, 64).unwrap(), 1);
        let a = ratio_sequence(&two, &atoms(&[0]), -8..=8).unwrap();
        assert_relative_eq!(a.a(-2).unwrap(), 0.5, max_relative = 1e-12);
        let flat = sys(MeasureSpace::geometric(1.0, -64, 64).unwrap(), 1);
        let a = ratio_sequence(&flat, &atoms(&[0, 1]), -8..=8).unwrap();
        assert!(a.iter().all(|(_, v)| (v - 0.5f64.sqrt()).abs() < 1e-12));
    }

    #[test]
    fn indicator_consistency() {
        let s = sys(MeasureSpace::two_sided_exp(2.0, -64, 64).unwrap(), 1);
        let w = atoms(&[0]);
        let a = ratio_sequence(&s, &w, -20..=20).unwrap();
        for (k, ak) in a.iter() {
            let n = indicator_norm(&s.space, &s.phi, &s.image(&w, k).unwrap()).unwrap();
            assert!((n * ak - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn distortion_examples() {
        let s = sys(MeasureSpace::geometric(0.5, -128, 128).unwrap(), 1);
        let k = distortion_constant(&s, &atoms(&[0]), 32, SubsetSpec::Exhaustive).unwrap();
        assert_eq!(k.value, 1.0);
        assert_eq!(k.subsets_evaluated, 1);

        let block = System::new(
            MeasureSpace::interleaved(vec![0.5, 0.5], vec![1.0, 3.0], -256, 256).unwrap(),
            Transform::shift(2),
            YoungFunction::power(2.0).unwrap(),
        )
        .unwrap();
        let w = atoms(&[0, 1]);
        let k = distortion_constant(&block, &w, 64, SubsetSpec::Exhaustive).unwrap();
        assert!((k.value - 1.0).abs() <= 1e-9);
        let h = generalized_distortion(&block, &w, 64, SubsetSpec::Exhaustive).unwrap();
        assert!((h.value - 1.0).abs() <= 1e-9);
        assert_eq!(bounded_distortion(&block, &w).status, Status::Holds);

        let mismatched = System::new(
            MeasureSpace::interleaved(vec![0.5, 2.0], vec![1.0, 1.0], -256, 256).unwrap(),
            Transform::shift(2),
            YoungFunction::power(2.0).unwrap(),
        )
        .unwrap();
        let grown: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&k| distortion_constant(&mismatched, &w, k, SubsetSpec::Exhaustive).unwrap().value)
            .collect();
        assert!(grown.windows(2).all(|p| p[1] > p[0]));
        // R_8(W)/R_8({1}) = ((2^8 + 2^-8)/2)^{1/2} · 2^4
        assert_relative_eq!(grown[0], 16.0 * (128.0f64 + 1.0 / 512.0).sqrt(), max_relative = 1e-12);
        assert_eq!(bounded_distortion(&mismatched, &w).status, Status::Fails);
        assert!(matches!(
            distortion_constant(&mismatched, &w, 200, SubsetSpec::Exhaustive),
            Err(Error::WindowEscape(_))
        ));
    }

    #[test]
    fn full_sample_matches_exhaustive() {
        let s = System::new(
            MeasureSpace::interleaved(vec![0.5, 2.0, 1.5, 0.8], vec![1.0, 2.0, 0.5, 1.0], -256, 256).unwrap(),
            Transform::shift(4),
            YoungFunction::power(1.5).unwrap(),
        )
        .unwrap();
        let w = atoms(&[0, 1, 2, 3]);
        let ex = distortion_constant(&s, &w, 32, SubsetSpec::Exhaustive).unwrap();
        let sa = distortion_constant(&s, &w, 32, SubsetSpec::Sample { count: 15, seed: 9 }).unwrap();
        assert_eq!(ex.value, sa.value);
        assert!(sa.exhaustive);
        let partial = distortion_constant(&s, &w, 32, SubsetSpec::Sample { count: 3, seed: 9 }).unwrap();
        assert!(!partial.exhaustive);
        assert!(partial.value <= ex.value);
        let h = generalized_distortion(&s, &w, 32, SubsetSpec::Exhaustive).unwrap();
        assert!(h.value <= ex.value.powi(2) * (1.0 + 1e-9));
    }
}
