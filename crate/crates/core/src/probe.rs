//! Empirical orbit sampling. Results can refute a classifier verdict but
//! never establish one.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SimpleFunction;
use crate::norm::gauge_norm;
use crate::system::System;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeConfig {
    pub samples: usize,
    pub seed: u64,
    /// Orbits are followed for `|n| ≤ horizon`.
    pub horizon: usize,
    /// The bound `M` orbits are compared against.
    pub threshold: f64,
    pub max_support: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { samples: 64, seed: 0, horizon: 40, threshold: 1e3, max_support: 8 }
    }
}

/// `N_Φ(C_φ^n f)` for `|n| ≤ H`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitStats {
    pub norms: Vec<(i64, f64)>,
    /// Sup over `0 ≤ n ≤ H`.
    pub forward_sup: f64,
    /// Sup over `|n| ≤ H`.
    pub two_sided_sup: f64,
}

pub fn orbit_stats(system: &System, f: &SimpleFunction, horizon: usize) -> Result<OrbitStats> {
    let h = horizon as i64;
    let norms = system.orbit_gauge_norms(f, -h..=h)?;
    let forward_sup = norms.iter().filter(|(n, _)| *n >= 0).fold(0.0f64, |m, &(_, v)| m.max(v));
    let two_sided_sup = norms.iter().fold(0.0f64, |m, &(_, v)| m.max(v));
    Ok(OrbitStats { norms, forward_sup, two_sided_sup })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeSample {
    pub function: Vec<(i64, f64)>,
    pub forward_sup: f64,
    pub two_sided_sup: f64,
    /// First `n ≥ 0` with `N_Φ(C_φ^n f) > M`.
    pub first_exceed: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub config: ProbeConfig,
    pub eligible_atoms: usize,
    pub samples: Vec<ProbeSample>,
    pub min_forward_sup: f64,
    pub min_two_sided_sup: f64,
    /// Every sample exceeds `M` along its forward orbit.
    pub all_exceed_forward: bool,
    pub note: &'static str,
}

/// Window atoms whose orbits stay inside the window for `|n| ≤ H`.
pub fn eligible_atoms(system: &System, horizon: usize) -> Vec<i64> {
    let h = horizon as i64;
    system
        .space
        .window_atoms()
        .filter(|&a| {
            (-h..=h).all(|k| system.transform.power(a, k).map(|b| system.space.contains(b)).unwrap_or(false))
        })
        .collect()
}

/// Random unit vectors: support of size `1..=max_support` among eligible
/// atoms, log-uniform magnitudes in `[0.01, 100]` with random signs, scaled
/// to gauge norm 1.
pub fn probe(system: &System, config: &ProbeConfig) -> Result<ProbeReport> {
    if config.max_support == 0 || config.samples == 0 {
        return Err(Error::InvalidArgument("probe needs at least one sample of positive support".into()));
    }
    let eligible = eligible_atoms(system, config.horizon);
    if eligible.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no atom keeps its orbit inside the window for {} steps",
            config.horizon
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut samples = Vec::with_capacity(config.samples);
    for _ in 0..config.samples {
        let size = rng.gen_range(1..=config.max_support.min(eligible.len()));
        let coeffs: Vec<(i64, f64)> = index::sample(&mut rng, eligible.len(), size)
            .into_iter()
            .map(|i| {
                let magnitude = 10f64.powf(rng.gen_range(-2.0..=2.0));
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                (eligible[i], sign * magnitude)
            })
            .collect();
        let raw = SimpleFunction::new(coeffs)?;
        let f = raw.scale(1.0 / gauge_norm(&system.space, &system.phi, &raw)?.value);
        let stats = orbit_stats(system, &f, config.horizon)?;
        let first_exceed = stats.norms.iter().find(|&&(n, v)| n >= 0 && v > config.threshold).map(|&(n, _)| n);
        samples.push(ProbeSample {
            function: f.iter().collect(),
            forward_sup: stats.forward_sup,
            two_sided_sup: stats.two_sided_sup,
            first_exceed,
        });
    }
    Ok(ProbeReport {
        config: *config,
        eligible_atoms: eligible.len(),
        min_forward_sup: samples.iter().map(|s| s.forward_sup).fold(f64::INFINITY, f64::min),
        min_two_sided_sup: samples.iter().map(|s| s.two_sided_sup).fold(f64::INFINITY, f64::min),
        all_exceed_forward: samples.iter().all(|s| s.first_exceed.is_some()),
        samples,
        note: "falsification only: finite samples cannot establish expansivity",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{atoms, MeasureSpace};
    use crate::transform::Transform;
    use crate::young::YoungFunction;

    fn geometric(r: f64) -> System {
        System::new(
            MeasureSpace::geometric(r, -128, 128).unwrap(),
            Transform::shift(1),
            YoungFunction::power(2.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn eligibility_respects_horizon() {
        let e = eligible_atoms(&geometric(0.5), 40);
        assert_eq!((e[0], *e.last().unwrap()), (-88, 88));
        assert!(probe(&geometric(0.5), &ProbeConfig { horizon: 200, ..Default::default() }).is_err());
    }

    #[test]
    fn expanding_orbits_leave_every_ball() {
        let r = probe(&geometric(0.5), &ProbeConfig { samples: 16, seed: 7, ..Default::default() }).unwrap();
        assert!(r.all_exceed_forward);
        assert!(r.min_forward_sup > 1e5);
    }

    #[test]
    fn deterministic_for_seed() {
        let c = ProbeConfig { samples: 8, seed: 3, ..Default::default() };
        assert_eq!(probe(&geometric(2.0), &c).unwrap(), probe(&geometric(2.0), &c).unwrap());
    }

    #[test]
    fn contracting_indicator_orbit() {
        // N(C^n χ̂_0) = 2^{-n/2} for r = 2
        let s = geometric(2.0);
        let f = SimpleFunction::indicator(&atoms(&[0]));
        let stats = orbit_stats(&s, &f, 40).unwrap();
        assert!((stats.forward_sup - 1.0).abs() < 1e-12);
        assert!((stats.two_sided_sup - 2f64.powi(20)).abs() < 1e-6 * 2f64.powi(20));
    }
}
