//! Shared fixtures for the criterion benchmarks.

use orlicz_core::{Analysis, ClassifierConfig, DissipativeSpec, MeasureSpace, SimpleFunction, System, Transform, YoungFunction};

pub fn families() -> Vec<YoungFunction> {
    vec![
        YoungFunction::power(2.0).unwrap(),
        YoungFunction::power_over_p(3.0).unwrap(),
        YoungFunction::p_log(1.5).unwrap(),
        YoungFunction::exp_minus_one(),
    ]
}

pub fn space() -> MeasureSpace {
    MeasureSpace::geometric(0.8, -16, 16).unwrap()
}

/// Deterministic function with `support` atoms and mixed-sign coefficients
/// spanning four decades, centered in the window of [`space`].
pub fn function(support: usize) -> SimpleFunction {
    SimpleFunction::new((0..support).map(|i| {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        (2 * i as i64 - support as i64, sign * 10f64.powf(-2.0 + 4.0 * i as f64 / support.max(2) as f64))
    }))
    .unwrap()
}

pub fn geometric_analysis(r: f64, horizon: usize) -> Analysis {
    let system = System::new(
        MeasureSpace::geometric(r, -1024, 1024).unwrap(),
        Transform::shift(1),
        YoungFunction::power(2.0).unwrap(),
    )
    .unwrap();
    let config = ClassifierConfig { horizon, ..Default::default() };
    Analysis::new(system, Some(&DissipativeSpec::new(orlicz_core::atoms(&[0]))), config).unwrap()
}

pub fn two_sided_analysis(horizon: usize) -> Analysis {
    let system = System::new(
        MeasureSpace::two_sided_exp(2.0, -1024, 1024).unwrap(),
        Transform::shift(1),
        YoungFunction::power(2.0).unwrap(),
    )
    .unwrap();
    let config = ClassifierConfig { horizon, ..Default::default() };
    Analysis::new(system, Some(&DissipativeSpec::new(orlicz_core::atoms(&[0]))), config).unwrap()
}
