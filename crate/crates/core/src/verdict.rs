//! Three-valued verdicts.
//!
//! Every decision about an infinite quantifier (limits over `n`, infima over
//! all atoms) is reported as [`Status::Holds`] or [`Status::Fails`] only when a
//! closed form or a verified tail model settles it; otherwise the answer is
//! [`Status::Undetermined`].

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Holds,
    Fails,
    Undetermined,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    /// Kleene conjunction.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Holds, Status::Holds) => Status::Holds,
            _ => Status::Undetermined,
        }
    }

    /// Kleene disjunction.
    pub fn or(self, other: Status) -> Status {
        match (self, other) {
            (Status::Holds, _) | (_, Status::Holds) => Status::Holds,
            (Status::Fails, Status::Fails) => Status::Fails,
            _ => Status::Undetermined,
        }
    }

    pub fn not(self) -> Status {
        match self {
            Status::Holds => Status::Fails,
            Status::Fails => Status::Holds,
            Status::Undetermined => Status::Undetermined,
        }
    }

    pub fn is_decided(self) -> bool {
        self != Status::Undetermined
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Undetermined => "Undetermined",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The decision criteria exposed by the classifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    PositiveExpansivityGeneral,
    ExpansivityGeneral,
    UniformPositiveExpansivityGeneral,
    UniformExpansivityGeneral,
    PositiveExpansivityDissipative,
    ExpansivityDissipative,
    UniformPositiveExpansivityDissipative,
    UniformExpansivityDissipative,
    StructuralInstability,
    StrongStructuralStability,
}

impl Criterion {
    pub fn tag(self) -> &'static str {
        match self {
            Criterion::PositiveExpansivityGeneral => "positive_expansivity_general",
            Criterion::ExpansivityGeneral => "expansivity_general",
            Criterion::UniformPositiveExpansivityGeneral => "uniform_positive_expansivity_general",
            Criterion::UniformExpansivityGeneral => "uniform_expansivity_general",
            Criterion::PositiveExpansivityDissipative => "positive_expansivity_dissipative",
            Criterion::ExpansivityDissipative => "expansivity_dissipative",
            Criterion::UniformPositiveExpansivityDissipative => {
                "uniform_positive_expansivity_dissipative"
            }
            Criterion::UniformExpansivityDissipative => "uniform_expansivity_dissipative",
            Criterion::StructuralInstability => "structural_instability",
            Criterion::StrongStructuralStability => "strong_structural_stability",
        }
    }

    /// The condition the verdict decides, written out as a formula.
    pub fn provenance(self) -> &'static str {
        match self {
            Criterion::PositiveExpansivityGeneral => {
                "for all A with 0<mu(A)<inf: inf_{n>=1} Phi^-1(1/mu(phi^-n(A))) = 0"
            }
            Criterion::ExpansivityGeneral => {
                "for all A with 0<mu(A)<inf: inf_{n in Z} Phi^-1(1/mu(phi^-n(A))) = 0"
            }
            Criterion::UniformPositiveExpansivityGeneral => {
                "Phi^-1(1/mu(F)) / Phi^-1(1/mu(phi^-n(F))) -> inf uniformly on F+"
            }
            Criterion::UniformExpansivityGeneral => {
                "F+ = F+_A u F+_B with forward ratio divergence on F+_A and backward on F+_B"
            }
            Criterion::PositiveExpansivityDissipative => {
                "inf_{n>=1} Phi^-1(1/mu(phi^-n(W))) = 0"
            }
            Criterion::ExpansivityDissipative => "inf_{n in Z} Phi^-1(1/mu(phi^n(W))) = 0",
            Criterion::UniformPositiveExpansivityDissipative => {
                "lim_n Phi^-1(1/mu(phi^-n(W))) = 0"
            }
            Criterion::UniformExpansivityDissipative => {
                "lim_n inf_k of orbit-norm ratios of chi_W diverges (forward, backward or split)"
            }
            Criterion::StructuralInstability => {
                "limsup sup_{k>=0} (a_{k+n}/a_k)^{1/n} < 1 and liminf inf_{k<=0} (a_k/a_{k-n})^{1/n} > 1"
            }
            Criterion::StrongStructuralStability => {
                "contracting: limsup sup_Z (a_{k+n}/a_k)^{1/n} < 1 | expanding: liminf inf_Z (a_{k+n}/a_k)^{1/n} > 1 | split"
            }
        }
    }
}

/// Evidence attached to a decided verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    Atom { atom: i64 },
    Set { atoms: Vec<i64> },
    Tail { side: String, ratio: Option<f64> },
    Pair { n: i64, k: i64, value: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub criterion: Criterion,
    pub provenance: &'static str,
    pub status: Status,
    /// Which sub-condition was met, for criteria with alternatives.
    pub condition: Option<String>,
    pub witness: Option<Witness>,
    /// Description of the tail model the decision rests on.
    pub tail_model: Option<String>,
    /// Horizon evidence (criterion-specific sequence).
    pub values: Vec<f64>,
    pub note: String,
}

impl Verdict {
    pub fn new(criterion: Criterion, status: Status) -> Self {
        Verdict {
            criterion,
            provenance: criterion.provenance(),
            status,
            condition: None,
            witness: None,
            tail_model: None,
            values: Vec::new(),
            note: String::new(),
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_condition(mut self, condition: impl Into<String>) -> Self {
        self.condition = Some(condition.into());
        self
    }

    pub fn with_tail_model(mut self, model: impl Into<String>) -> Self {
        self.tail_model = Some(model.into());
        self
    }

    pub fn with_values(mut self, values: Vec<f64>) -> Self {
        self.values = values;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}
