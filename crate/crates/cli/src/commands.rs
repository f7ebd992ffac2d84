//! Subcommands. Each writes `<out>/<subcommand>.json` and, where a trace
//! exists, CSV files next to it.

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;

use anyhow::Context as _;
use orlicz_core::classify::{
    exponent_estimates, shadowing_report, strong_structural_stability, structural_instability, ShadowingReport,
};
use orlicz_core::norm::modular;
use orlicz_core::{
    check_delta2, check_delta_prime, classify_all, norm_report, probe as run_probe, Analysis, BoundednessCertificate,
    Criterion, DeltaCertificate, DissipativeStructure, ExponentEstimates, NormReport, Outcome, ProbeReport, Status,
    Verdict, Window, YoungFunction,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::scenario::{Scenario, SweepParameter, ALL_CRITERIA};
use crate::CliError;

pub struct Context {
    pub scenario: Scenario,
    pub echo: serde_json::Value,
    pub out: PathBuf,
    pub seed: u64,
}

#[derive(Serialize)]
struct Report<'a, T> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    seed: u64,
    scenario: &'a serde_json::Value,
    #[serde(flatten)]
    body: T,
}

fn invalid(e: impl Display) -> CliError {
    CliError::InvalidScenario(e.to_string())
}

impl Context {
    fn write_report<T: Serialize>(&self, subcommand: &'static str, body: T) -> Result<(), CliError> {
        let report = Report {
            tool: "orlicz",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            seed: self.seed,
            scenario: &self.echo,
            body,
        };
        let mut text = serde_json::to_string_pretty(&report).context("serializing report")?;
        text.push('\n');
        self.write(&format!("{subcommand}.json"), &text)
    }

    fn write_csv(&self, name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
        let mut text = header.join(",");
        text.push('\n');
        for row in rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        self.write(name, &text)
    }

    fn write(&self, name: &str, text: &str) -> Result<(), CliError> {
        fs::create_dir_all(&self.out).with_context(|| format!("creating {}", self.out.display()))?;
        let path = self.out.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn unbounded(b: &BoundednessCertificate) -> Result<(), CliError> {
    if b.unbounded_evidence() {
        Err(CliError::Unbounded(b.note.clone()))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct ConjugateSummary {
    closed_form: bool,
    function: YoungFunction,
    /// Grid points where the supremum lies beyond the evaluation cap.
    undetermined: Vec<f64>,
}

#[derive(Serialize)]
struct YoungBody {
    young: YoungFunction,
    growth_index: Option<f64>,
    delta2: DeltaCertificate,
    delta_prime: DeltaCertificate,
    conjugate: ConjugateSummary,
}

pub fn young(ctx: &Context) -> Result<(), CliError> {
    let phi = ctx.scenario.young()?;
    let conjugate = phi.conjugate().map_err(invalid)?;
    let psi = conjugate.function.clone();
    let body = YoungBody {
        growth_index: phi.growth_index(),
        delta2: check_delta2(&phi, &Window::delta2_default()).map_err(invalid)?,
        delta_prime: check_delta_prime(&phi, &Window::delta_prime_default()).map_err(invalid)?,
        conjugate: ConjugateSummary {
            closed_form: conjugate.closed_form,
            function: conjugate.function,
            undetermined: conjugate.undetermined,
        },
        young: phi.clone(),
    };
    println!("delta2 {} delta_prime {}", body.delta2.status, body.delta_prime.status);
    ctx.write_report("young", &body)?;
    let rows = (0..=60).map(|i| {
        let x = 10f64.powf(-3.0 + i as f64 / 10.0);
        vec![x.to_string(), phi.eval_abs(x).to_string(), opt(phi.inverse(x).ok()), psi.eval_abs(x).to_string()]
    });
    ctx.write_csv("young.csv", &["x", "phi", "phi_inverse", "psi"], rows)
}

#[derive(Serialize)]
struct NormBody {
    function: Vec<(i64, f64)>,
    modular: f64,
    norms: NormReport,
}

pub fn norm(ctx: &Context) -> Result<(), CliError> {
    let (space, phi, f) = (ctx.scenario.space()?, ctx.scenario.young()?, ctx.scenario.function()?);
    let body = NormBody {
        function: f.iter().collect(),
        modular: modular(&space, &phi, &f).map_err(invalid)?,
        norms: norm_report(&space, &phi, &f, true).map_err(invalid)?,
    };
    println!("gauge {} amemiya {}", body.norms.gauge, body.norms.amemiya);
    ctx.write_report("norm", &body)
}

/// The analysis, without a structure (and the reason) when the generator
/// does not yield one.
fn analysis(scenario: &Scenario) -> Result<(Analysis, Option<String>), CliError> {
    let system = scenario.system()?;
    let config = scenario.classifier_config();
    let spec = scenario.dissipative_spec();
    match Analysis::new(system.clone(), spec.as_ref(), config) {
        Ok(a) => Ok((a, None)),
        Err(e) if spec.is_some() => {
            eprintln!("note: dissipative criteria skipped: {e}");
            Ok((Analysis::new(system, None, config).map_err(invalid)?, Some(e.to_string())))
        }
        Err(e) => Err(invalid(e)),
    }
}

#[derive(Serialize)]
struct Certificates<'a> {
    boundedness: &'a BoundednessCertificate,
    delta2: &'a DeltaCertificate,
    delta_prime: &'a DeltaCertificate,
    dissipative: Option<&'a DissipativeStructure>,
    dissipative_error: Option<String>,
}

fn certificates(a: &Analysis, error: Option<String>) -> Certificates<'_> {
    Certificates {
        boundedness: &a.boundedness,
        delta2: &a.delta2,
        delta_prime: &a.delta_prime,
        dissipative: a.structure.as_ref(),
        dissipative_error: error,
    }
}

fn tags_with(outcomes: &[Outcome], status: Status) -> Vec<&'static str> {
    outcomes.iter().filter_map(Outcome::verdict).filter(|v| v.status == status).map(|v| v.criterion.tag()).collect()
}

fn print_outcomes(outcomes: &[Outcome]) {
    for o in outcomes {
        match o {
            Outcome::Verdict(v) => println!("{:<42} {}", v.criterion.tag(), v.status),
            Outcome::Error { criterion, error } => println!("{:<42} error: {error}", criterion.tag()),
        }
    }
}

#[derive(Serialize)]
struct ClassifyBody<'a> {
    certificates: Certificates<'a>,
    /// Criteria whose verdict is `Undetermined`.
    undetermined: Vec<&'static str>,
    verdicts: Vec<Outcome>,
    exponents: Option<ExponentEstimates>,
}

pub fn classify(ctx: &Context) -> Result<(), CliError> {
    let (a, error) = analysis(&ctx.scenario)?;
    let verdicts: Vec<Outcome> =
        classify_all(&a).into_iter().filter(|o| ctx.scenario.wants(criterion_of(o))).collect();
    print_outcomes(&verdicts);
    let body = ClassifyBody {
        certificates: certificates(&a, error),
        undetermined: tags_with(&verdicts, Status::Undetermined),
        exponents: a.structure.as_ref().and_then(|_| exponent_estimates(&a).ok()),
        verdicts,
    };
    ctx.write_report("classify", &body)?;
    if let Some(s) = &a.structure {
        let h = a.config.horizon as i64;
        let seq = s.ratio_sequence(&a.system, -h..=h).map_err(invalid)?;
        ctx.write_csv("classify_a_k.csv", &["k", "a_k"], seq.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]))?;
    }
    unbounded(&a.boundedness)
}

fn criterion_of(o: &Outcome) -> Criterion {
    match o {
        Outcome::Verdict(v) => v.criterion,
        Outcome::Error { criterion, .. } => *criterion,
    }
}

fn outcome(criterion: Criterion, r: orlicz_core::Result<Verdict>) -> Outcome {
    match r {
        Ok(v) => Outcome::Verdict(v),
        Err(e) => Outcome::Error { criterion, error: e.to_string() },
    }
}

#[derive(Serialize)]
struct StabilityBody<'a> {
    certificates: Certificates<'a>,
    exponents: Option<ExponentEstimates>,
    exponents_error: Option<String>,
    verdicts: Vec<Outcome>,
    shadowing: Option<ShadowingReport>,
}

pub fn stability(ctx: &Context) -> Result<(), CliError> {
    let (a, error) = analysis(&ctx.scenario)?;
    let (exponents, exponents_error) = match exponent_estimates(&a) {
        Ok(e) => (Some(e), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let verdicts = vec![
        outcome(Criterion::StructuralInstability, structural_instability(&a)),
        outcome(Criterion::StrongStructuralStability, strong_structural_stability(&a)),
    ];
    print_outcomes(&verdicts);
    let body = StabilityBody {
        certificates: certificates(&a, error),
        shadowing: shadowing_report(&a).ok(),
        exponents,
        exponents_error,
        verdicts,
    };
    ctx.write_report("stability", &body)?;
    if let Some(e) = &body.exponents {
        let all = e.all();
        let mut header = vec!["n"];
        header.extend(all.iter().map(|x| x.name));
        let len = all.iter().map(|x| x.trace.len()).max().unwrap_or(0);
        let rows = (0..len).map(|i| {
            let mut row = vec![(i + 1).to_string()];
            row.extend(all.iter().map(|x| opt(x.trace.get(i).copied())));
            row
        });
        ctx.write_csv("stability_exponents.csv", &header, rows)?;
    }
    unbounded(&a.boundedness)
}

#[derive(Serialize)]
struct ProbeBody {
    boundedness: BoundednessCertificate,
    probe: ProbeReport,
}

pub fn probe(ctx: &Context) -> Result<(), CliError> {
    let system = ctx.scenario.system()?;
    let report = run_probe(&system, &ctx.scenario.probe_config()).map_err(invalid)?;
    println!(
        "min forward sup {} all exceed {}: {}",
        report.min_forward_sup, report.config.threshold, report.all_exceed_forward
    );
    let rows: Vec<Vec<String>> = report
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                i.to_string(),
                s.function.len().to_string(),
                s.forward_sup.to_string(),
                s.two_sided_sup.to_string(),
                s.first_exceed.map_or_else(String::new, |n| n.to_string()),
            ]
        })
        .collect();
    let body = ProbeBody { boundedness: system.boundedness_check(), probe: report };
    ctx.write_report("probe", &body)?;
    ctx.write_csv("probe_samples.csv", &["sample", "support", "forward_sup", "two_sided_sup", "first_exceed"], rows)?;
    unbounded(&body.boundedness)
}

#[derive(Serialize)]
struct SweepRow {
    value: f64,
    unbounded_evidence: bool,
    statuses: Vec<(&'static str, Option<Status>)>,
    exponents: Vec<(&'static str, Option<f64>)>,
}

#[derive(Serialize)]
struct SweepBody {
    parameter: SweepParameter,
    rows: Vec<SweepRow>,
}

const EXPONENT_NAMES: [&str; 6] = [
    "forward_sup_all",
    "forward_inf_all",
    "forward_sup_nonneg",
    "backward_inf_nonpos",
    "backward_sup_nonpos",
    "reverse_inf_nonneg",
];

fn sweep_point(scenario: &Scenario, value: f64) -> Result<SweepRow, CliError> {
    let (a, _) = analysis(scenario)?;
    let outcomes = classify_all(&a);
    let statuses = ALL_CRITERIA
        .iter()
        .filter(|&&c| scenario.wants(c))
        .map(|&c| (c.tag(), outcomes.iter().find(|o| criterion_of(o) == c).and_then(Outcome::status)))
        .collect();
    let e = a.structure.as_ref().and_then(|_| exponent_estimates(&a).ok());
    let exponents = match &e {
        Some(e) => e.all().iter().map(|x| (x.name, x.numeric)).collect(),
        None => EXPONENT_NAMES.iter().map(|&n| (n, None)).collect(),
    };
    Ok(SweepRow { value, unbounded_evidence: a.boundedness.unbounded_evidence(), statuses, exponents })
}

pub fn sweep(ctx: &Context) -> Result<(), CliError> {
    let spec = ctx.scenario.sweep.as_ref().ok_or_else(|| invalid("scenario has no sweep"))?;
    let rows = spec
        .values
        .par_iter()
        .map(|&v| sweep_point(&ctx.scenario.at(spec.parameter, v)?, v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut header: Vec<&str> = vec!["value", "unbounded_evidence"];
    if let Some(first) = rows.first() {
        header.extend(first.statuses.iter().map(|s| s.0));
        header.extend(first.exponents.iter().map(|s| s.0));
    }
    let csv: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.value.to_string(), r.unbounded_evidence.to_string()];
            row.extend(r.statuses.iter().map(|(_, s)| s.map_or("error", Status::as_str).to_string()));
            row.extend(r.exponents.iter().map(|(_, x)| opt(*x)));
            row
        })
        .collect();
    for row in &csv {
        println!("{}", row.join(","));
    }
    let any_unbounded = rows.iter().any(|r| r.unbounded_evidence);
    ctx.write_report("sweep", &SweepBody { parameter: spec.parameter, rows })?;
    ctx.write_csv("sweep.csv", &header, csv)?;
    if any_unbounded {
        return Err(CliError::Unbounded("at least one sweep point".into()));
    }
    Ok(())
}
