//! Expansivity and stability classifiers.
//!
//! Every classifier reads a prepared [`Analysis`]: the system, its
//! boundedness certificate, the Δ2/Δ′ certificates and, when a generator is
//! supplied, the dissipative structure. Limits over infinitely many `n` are
//! decided from tail models only; horizon values are attached as evidence
//! and never change a decided status.

mod dissipative;
mod exponents;
mod general;
mod stability;

pub use dissipative::{
    expansive_dissipative, positively_expansive_dissipative, uniformly_expansive_dissipative,
    uniformly_positively_expansive_dissipative,
};
pub use exponents::{exponent_estimates, Exponent, ExponentEstimates, Trend};
pub use general::{expansive_general, positively_expansive_general, uniform_general_heuristic};
pub use stability::{shadowing_report, strong_structural_stability, structural_instability, ShadowingReport};

use serde::Serialize;

use crate::delta::{check_delta2, check_delta_prime, DeltaCertificate, Window};
use crate::dissipative::{DissipativeSpec, DissipativeStructure};
use crate::error::{Error, Result};
use crate::system::{BoundednessCertificate, System};
use crate::verdict::{Criterion, Status, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifierConfig {
    /// Number of iterates collected as evidence.
    pub horizon: usize,
    /// Exponent thresholds are cleared only by more than this.
    pub margin: f64,
    pub delta2_window: Window,
    pub delta_prime_window: Window,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            horizon: 256,
            margin: 1e-6,
            delta2_window: Window::delta2_default(),
            delta_prime_window: Window::delta_prime_default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub system: System,
    pub config: ClassifierConfig,
    pub boundedness: BoundednessCertificate,
    pub delta2: DeltaCertificate,
    pub delta_prime: DeltaCertificate,
    pub structure: Option<DissipativeStructure>,
}

impl Analysis {
    pub fn new(system: System, dissipative: Option<&DissipativeSpec>, config: ClassifierConfig) -> Result<Analysis> {
        let boundedness = system.boundedness_check();
        let delta2 = check_delta2(&system.phi, &config.delta2_window)?;
        let delta_prime = check_delta_prime(&system.phi, &config.delta_prime_window)?;
        let structure = dissipative.map(|spec| DissipativeStructure::build(&system, spec)).transpose()?;
        Ok(Analysis { system, config, boundedness, delta2, delta_prime, structure })
    }

    /// Errors when `C_φ` shows evidence of unboundedness; otherwise the note
    /// to attach when boundedness is not certified.
    fn bounded_gate(&self) -> Result<Option<String>> {
        if self.boundedness.unbounded_evidence() {
            return Err(Error::Precondition(format!(
                "composition operator shows unbounded evidence ({})",
                self.boundedness.note
            )));
        }
        Ok((!self.boundedness.both_bounded()).then(|| "boundedness of C_phi not certified".to_string()))
    }

    fn structure(&self) -> Result<&DissipativeStructure> {
        self.structure
            .as_ref()
            .ok_or_else(|| Error::Precondition("no dissipative generator supplied".into()))
    }

    /// Notes for every unmet hypothesis of the dissipative criteria.
    fn dissipative_gate(&self) -> Result<Vec<String>> {
        let s = self.structure()?;
        let mut notes: Vec<String> = self.bounded_gate()?.into_iter().collect();
        if s.certificate.status != Status::Holds {
            notes.push(format!("decomposition {}: {}", s.certificate.status, s.certificate.note));
        }
        if s.bounded_distortion.status != Status::Holds {
            notes.push(format!("bounded distortion {}: {}", s.bounded_distortion.status, s.bounded_distortion.note));
        }
        Ok(notes)
    }

    fn require(&self, cert: &DeltaCertificate, name: &str, strict: bool) -> Result<Option<String>> {
        match cert.status {
            Status::Holds => Ok(None),
            Status::Fails => Err(Error::Precondition(format!("{name} fails: {}", cert.note))),
            Status::Undetermined if strict => Err(Error::Precondition(format!("{name} not certified: {}", cert.note))),
            Status::Undetermined => Ok(Some(format!("{name} not certified"))),
        }
    }
}

/// Downgrades a decided verdict to `Undetermined` when a hypothesis is
/// unmet, keeping the evidence and recording why.
fn gated(verdict: Verdict, notes: Vec<String>) -> Verdict {
    if notes.is_empty() {
        return verdict;
    }
    let mut v = verdict;
    let reason = notes.join("; ");
    if v.status.is_decided() {
        v.note = format!("would be {} but {reason}", v.status);
        v.status = Status::Undetermined;
        v.witness = None;
        v.condition = None;
    } else if v.note.is_empty() {
        v.note = reason;
    } else {
        v.note = format!("{}; {reason}", v.note);
    }
    v
}

/// Outcome of one criterion in a batch run.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Verdict(Verdict),
    Error { criterion: Criterion, error: String },
}

impl Outcome {
    pub fn verdict(&self) -> Option<&Verdict> {
        match self {
            Outcome::Verdict(v) => Some(v),
            Outcome::Error { .. } => None,
        }
    }

    pub fn status(&self) -> Option<Status> {
        self.verdict().map(|v| v.status)
    }
}

fn outcome(criterion: Criterion, r: Result<Verdict>) -> Outcome {
    match r {
        Ok(v) => Outcome::Verdict(v),
        Err(e) => Outcome::Error { criterion, error: e.to_string() },
    }
}

/// Runs every criterion that applies: the general ones always, the
/// dissipative and stability ones when a structure is present.
pub fn classify_all(analysis: &Analysis) -> Vec<Outcome> {
    use Criterion::*;
    let mut out = vec![
        outcome(PositiveExpansivityGeneral, positively_expansive_general(analysis)),
        outcome(ExpansivityGeneral, expansive_general(analysis)),
    ];
    if let Some(s) = &analysis.structure {
        let family = vec![s.generator.clone()];
        out.push(outcome(
            UniformPositiveExpansivityGeneral,
            uniform_general_heuristic(analysis, &family, false),
        ));
        out.push(outcome(UniformExpansivityGeneral, uniform_general_heuristic(analysis, &family, true)));
        out.push(outcome(PositiveExpansivityDissipative, positively_expansive_dissipative(analysis)));
        out.push(outcome(ExpansivityDissipative, expansive_dissipative(analysis)));
        out.push(outcome(
            UniformPositiveExpansivityDissipative,
            uniformly_positively_expansive_dissipative(analysis),
        ));
        out.push(outcome(UniformExpansivityDissipative, uniformly_expansive_dissipative(analysis)));
        out.push(outcome(StructuralInstability, structural_instability(analysis)));
        out.push(outcome(StrongStructuralStability, strong_structural_stability(analysis)));
    }
    out
}
