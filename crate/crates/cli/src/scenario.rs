//! Scenario files: JSON schema, validation and construction of core objects.

use std::collections::BTreeMap;

use orlicz_core::{
    atoms, ClassifierConfig, Criterion, DeclaredTail, DissipativeSpec, MeasureSpace, OffWindow, ProbeConfig,
    SimpleFunction, SubsetSpec, System, Transform, YoungFunction,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

const DEFAULT_WINDOW: [i64; 2] = [-256, 256];

fn default_window() -> [i64; 2] {
    DEFAULT_WINDOW
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub young: YoungSpec,
    #[serde(default)]
    pub space: Option<SpaceSpec>,
    #[serde(default)]
    pub transform: Option<TransformSpec>,
    #[serde(default)]
    pub dissipative: Option<DissipativeDto>,
    #[serde(default)]
    pub classifier: ClassifierSpec,
    #[serde(default)]
    pub probe: ProbeSpec,
    /// Coefficients of the simple function for `norm`, keyed by atom.
    #[serde(default)]
    pub function: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum YoungSpec {
    Power { p: f64 },
    PowerOverP { p: f64 },
    ExpMinusOne,
    PLog { p: f64 },
    Table { xs: Vec<f64>, ys: Vec<f64> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Geometric {
        r: f64,
        #[serde(default = "default_window")]
        window: [i64; 2],
    },
    TwoSidedExp {
        base: f64,
        #[serde(default = "default_window")]
        window: [i64; 2],
    },
    Interleaved {
        ratios: Vec<f64>,
        scales: Vec<f64>,
        #[serde(default = "default_window")]
        window: [i64; 2],
    },
    BlockGeometric {
        r: f64,
        m: usize,
        #[serde(default = "default_window")]
        window: [i64; 2],
    },
    Table {
        weights: BTreeMap<String, f64>,
        #[serde(default)]
        left: Option<TailSpec>,
        #[serde(default)]
        right: Option<TailSpec>,
        /// Shorthand `"<monotone kind>_<side>"`, e.g. `"monotone_increasing_left"`.
        #[serde(default)]
        tail: Option<String>,
        #[serde(default)]
        window: Option<[i64; 2]>,
    },
}

/// `"monotone_increasing"`, `"monotone_decreasing"`, `{"geometric": r}` or
/// `{"periodic": m}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TailSpec {
    MonotoneIncreasing,
    MonotoneDecreasing,
    Geometric(f64),
    Periodic(usize),
}

impl TailSpec {
    fn declared(&self) -> DeclaredTail {
        match *self {
            TailSpec::MonotoneIncreasing => DeclaredTail::MonotoneIncreasing,
            TailSpec::MonotoneDecreasing => DeclaredTail::MonotoneDecreasing,
            TailSpec::Geometric(ratio) => DeclaredTail::Geometric { ratio },
            TailSpec::Periodic(period) => DeclaredTail::Periodic { period },
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransformSpec {
    Shift { step: i64 },
    Table { map: BTreeMap<String, i64>, off_window: OffWindowSpec },
}

/// `"reject"` or `{"extend_by_shift": step}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OffWindowSpec {
    Reject,
    ExtendByShift(i64),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DissipativeDto {
    #[serde(rename = "W")]
    pub generator: Vec<i64>,
    #[serde(default = "default_k_window")]
    pub k_window: i64,
    #[serde(default)]
    pub subsets: Option<SubsetsSpec>,
}

fn default_k_window() -> i64 {
    64
}

/// `"exhaustive"` or `{"sample": count, "seed": s}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SubsetsSpec {
    Named(SubsetsName),
    Sample {
        sample: usize,
        #[serde(default)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetsName {
    Exhaustive,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierSpec {
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default = "default_margin")]
    pub margin: f64,
    /// Criterion tags to report; all when absent.
    #[serde(default)]
    pub criteria: Option<Vec<String>>,
}

fn default_horizon() -> usize {
    256
}

fn default_margin() -> f64 {
    1e-6
}

impl Default for ClassifierSpec {
    fn default() -> Self {
        ClassifierSpec { horizon: default_horizon(), margin: default_margin(), criteria: None }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_probe_horizon")]
    pub horizon: usize,
    #[serde(rename = "M", default = "default_threshold")]
    pub threshold: f64,
    #[serde(default = "default_max_support")]
    pub max_support: usize,
}

fn default_samples() -> usize {
    64
}

fn default_probe_horizon() -> usize {
    40
}

fn default_threshold() -> f64 {
    1e3
}

fn default_max_support() -> usize {
    8
}

impl Default for ProbeSpec {
    fn default() -> Self {
        ProbeSpec {
            samples: default_samples(),
            seed: 0,
            horizon: default_probe_horizon(),
            threshold: default_threshold(),
            max_support: default_max_support(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Ratio of a geometric or block-geometric space.
    R,
    /// Base of a two-sided exponential space.
    Base,
    /// Exponent of a power-type Young function.
    P,
    /// Step of a shift.
    Step,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidScenario(msg.into())
}

fn parse_atom(key: &str) -> Result<i64, CliError> {
    key.trim().parse().map_err(|_| invalid(format!("atom key {key:?} is not an integer")))
}

fn check_window(window: [i64; 2]) -> Result<(), CliError> {
    if window[0] > window[1] {
        return Err(invalid(format!("window [{}, {}] is empty", window[0], window[1])));
    }
    Ok(())
}

impl Scenario {
    pub fn parse(text: &str) -> Result<(Scenario, serde_json::Value), CliError> {
        let echo: serde_json::Value = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        let scenario: Scenario = serde_json::from_value(echo.clone()).map_err(|e| invalid(e.to_string()))?;
        scenario.validate()?;
        Ok((scenario, echo))
    }

    /// Cross-field checks that the schema cannot express.
    pub fn validate(&self) -> Result<(), CliError> {
        self.young()?;
        let space = self.space.as_ref().map(|_| self.space()).transpose()?;
        if let Some(t) = &self.transform {
            self.build_transform(t)?;
        }
        if let Some(d) = &self.dissipative {
            if d.generator.is_empty() {
                return Err(invalid("dissipative.W is empty"));
            }
            if d.k_window < 1 {
                return Err(invalid("dissipative.k_window must be positive"));
            }
            let space = space.as_ref().ok_or_else(|| invalid("dissipative generator given without a space"))?;
            if let Some(a) = d.generator.iter().find(|&&a| !space.contains(a)) {
                return Err(invalid(format!("generator atom {a} lies outside the window")));
            }
        }
        if self.classifier.horizon == 0 {
            return Err(invalid("classifier.horizon must be positive"));
        }
        if !(self.classifier.margin >= 0.0 && self.classifier.margin.is_finite()) {
            return Err(invalid("classifier.margin must be a finite nonnegative number"));
        }
        if let Some(tags) = &self.classifier.criteria {
            if let Some(t) = tags.iter().find(|t| !ALL_CRITERIA.iter().any(|c| c.tag() == t.as_str())) {
                return Err(invalid(format!("unknown criterion {t:?}")));
            }
        }
        if self.probe.samples == 0 || self.probe.max_support == 0 || self.probe.horizon == 0 {
            return Err(invalid("probe samples, horizon and max_support must be positive"));
        }
        if let Some(f) = &self.function {
            let space = space.as_ref().ok_or_else(|| invalid("function given without a space"))?;
            for key in f.keys() {
                let a = parse_atom(key)?;
                if !space.contains(a) {
                    return Err(invalid(format!("function atom {a} lies outside the window")));
                }
            }
            self.function()?;
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(invalid("sweep.values is empty"));
            }
            for &v in &sweep.values {
                self.at(sweep.parameter, v)?.validate_point()?;
            }
        }
        Ok(())
    }

    fn validate_point(&self) -> Result<(), CliError> {
        self.young()?;
        self.space()?;
        if let Some(t) = &self.transform {
            self.build_transform(t)?;
        }
        Ok(())
    }

    pub fn young(&self) -> Result<YoungFunction, CliError> {
        let phi = match &self.young {
            YoungSpec::Power { p } => YoungFunction::power(*p),
            YoungSpec::PowerOverP { p } => YoungFunction::power_over_p(*p),
            YoungSpec::ExpMinusOne => Ok(YoungFunction::exp_minus_one()),
            YoungSpec::PLog { p } => YoungFunction::p_log(*p),
            YoungSpec::Table { xs, ys } => YoungFunction::table(xs.clone(), ys.clone()),
        };
        phi.map_err(|e| invalid(e.to_string()))
    }

    pub fn space(&self) -> Result<MeasureSpace, CliError> {
        let spec = self.space.as_ref().ok_or_else(|| invalid("scenario has no space"))?;
        let space = match spec {
            SpaceSpec::Geometric { r, window } => {
                check_window(*window)?;
                MeasureSpace::geometric(*r, window[0], window[1])
            }
            SpaceSpec::TwoSidedExp { base, window } => {
                check_window(*window)?;
                MeasureSpace::two_sided_exp(*base, window[0], window[1])
            }
            SpaceSpec::Interleaved { ratios, scales, window } => {
                check_window(*window)?;
                MeasureSpace::interleaved(ratios.clone(), scales.clone(), window[0], window[1])
            }
            SpaceSpec::BlockGeometric { r, m, window } => {
                check_window(*window)?;
                MeasureSpace::block_geometric(*r, *m, window[0], window[1])
            }
            SpaceSpec::Table { weights, left, right, tail, window } => {
                let weights = weights
                    .iter()
                    .map(|(k, &w)| parse_atom(k).map(|a| (a, w)))
                    .collect::<Result<BTreeMap<i64, f64>, _>>()?;
                let (mut left, mut right) = (left.as_ref().map(TailSpec::declared), right.as_ref().map(TailSpec::declared));
                if let Some(short) = tail {
                    let (kind, side) = short.rsplit_once('_').ok_or_else(|| invalid(format!("bad tail {short:?}")))?;
                    let declared = match kind {
                        "monotone_increasing" => DeclaredTail::MonotoneIncreasing,
                        "monotone_decreasing" => DeclaredTail::MonotoneDecreasing,
                        _ => return Err(invalid(format!("bad tail kind {kind:?}"))),
                    };
                    let slot = match side {
                        "left" => &mut left,
                        "right" => &mut right,
                        _ => return Err(invalid(format!("bad tail side {side:?}"))),
                    };
                    if slot.is_some() {
                        return Err(invalid(format!("{side} tail declared twice")));
                    }
                    *slot = Some(declared);
                }
                if let Some(w) = window {
                    check_window(*w)?;
                }
                MeasureSpace::table(weights, left, right, window.map(|w| (w[0], w[1])))
            }
        };
        space.map_err(|e| invalid(e.to_string()))
    }

    fn build_transform(&self, spec: &TransformSpec) -> Result<Transform, CliError> {
        match spec {
            TransformSpec::Shift { step } => Ok(Transform::shift(*step)),
            TransformSpec::Table { map, off_window } => {
                let map = map
                    .iter()
                    .map(|(k, &v)| parse_atom(k).map(|a| (a, v)))
                    .collect::<Result<BTreeMap<i64, i64>, _>>()?;
                let off = match off_window {
                    OffWindowSpec::Reject => OffWindow::Reject,
                    OffWindowSpec::ExtendByShift(step) => OffWindow::ExtendByShift { step: *step },
                };
                Transform::table(map, off).map_err(|e| invalid(e.to_string()))
            }
        }
    }

    pub fn system(&self) -> Result<System, CliError> {
        let spec = self.transform.as_ref().ok_or_else(|| invalid("scenario has no transform"))?;
        System::new(self.space()?, self.build_transform(spec)?, self.young()?).map_err(|e| invalid(e.to_string()))
    }

    pub fn dissipative_spec(&self) -> Option<DissipativeSpec> {
        self.dissipative.as_ref().map(|d| DissipativeSpec {
            generator: atoms(&d.generator),
            k_window: d.k_window,
            subsets: match d.subsets {
                None | Some(SubsetsSpec::Named(SubsetsName::Exhaustive)) => SubsetSpec::Exhaustive,
                Some(SubsetsSpec::Sample { sample, seed }) => SubsetSpec::Sample { count: sample, seed },
            },
        })
    }

    pub fn classifier_config(&self) -> ClassifierConfig {
        ClassifierConfig { horizon: self.classifier.horizon, margin: self.classifier.margin, ..Default::default() }
    }

    pub fn probe_config(&self) -> ProbeConfig {
        ProbeConfig {
            samples: self.probe.samples,
            seed: self.probe.seed,
            horizon: self.probe.horizon,
            threshold: self.probe.threshold,
            max_support: self.probe.max_support,
        }
    }

    pub fn function(&self) -> Result<SimpleFunction, CliError> {
        let f = self.function.as_ref().ok_or_else(|| invalid("scenario has no function"))?;
        let coeffs = f.iter().map(|(k, &c)| parse_atom(k).map(|a| (a, c))).collect::<Result<Vec<_>, _>>()?;
        SimpleFunction::new(coeffs).map_err(|e| invalid(e.to_string()))
    }

    pub fn wants(&self, criterion: Criterion) -> bool {
        self.classifier.criteria.as_ref().is_none_or(|tags| tags.iter().any(|t| t == criterion.tag()))
    }

    /// The scenario with one parameter replaced.
    pub fn at(&self, parameter: SweepParameter, value: f64) -> Result<Scenario, CliError> {
        let mut s = self.clone();
        s.sweep = None;
        let mismatch = || invalid(format!("sweep parameter {parameter:?} does not apply to this scenario"));
        match parameter {
            SweepParameter::R => match &mut s.space {
                Some(SpaceSpec::Geometric { r, .. } | SpaceSpec::BlockGeometric { r, .. }) => *r = value,
                _ => return Err(mismatch()),
            },
            SweepParameter::Base => match &mut s.space {
                Some(SpaceSpec::TwoSidedExp { base, .. }) => *base = value,
                _ => return Err(mismatch()),
            },
            SweepParameter::P => match &mut s.young {
                YoungSpec::Power { p } | YoungSpec::PowerOverP { p } | YoungSpec::PLog { p } => *p = value,
                _ => return Err(mismatch()),
            },
            SweepParameter::Step => match &mut s.transform {
                Some(TransformSpec::Shift { step }) if value.fract() == 0.0 => *step = value as i64,
                _ => return Err(mismatch()),
            },
        }
        Ok(s)
    }
}

pub const ALL_CRITERIA: [Criterion; 10] = [
    Criterion::PositiveExpansivityGeneral,
    Criterion::ExpansivityGeneral,
    Criterion::UniformPositiveExpansivityGeneral,
    Criterion::UniformExpansivityGeneral,
    Criterion::PositiveExpansivityDissipative,
    Criterion::ExpansivityDissipative,
    Criterion::UniformPositiveExpansivityDissipative,
    Criterion::UniformExpansivityDissipative,
    Criterion::StructuralInstability,
    Criterion::StrongStructuralStability,
];
