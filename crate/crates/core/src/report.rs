//! Outcome of checking one statement exhaustively on one structure.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::prime::{Variant, Witness};
use crate::set::ElementSet;
use crate::structure::{FiniteModule, RingAction};

macro_rules! theorems {
    ($($variant:ident => $name:literal,)*) => {
        /// Named statements the verifiers check.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Theorem { $($variant,)* }

        impl Theorem {
            pub const ALL: &'static [Theorem] = &[$(Theorem::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(Theorem::$variant => $name,)* }
            }
        }
    };
}

theorems! {
    Chain => "chain",
    PrimeImpliesClassical => "prime-implies-classical",
    DaunsImpliesJuglal => "dauns-implies-juglal",
    RIdealIsSubmodule => "r-ideal-is-submodule",
    Char0 => "char-0",
    Char2 => "char-2",
    Char3 => "char-3",
    CharC => "char-c",
    TildeIdeal => "tilde-ideal",
    TildePrime => "tilde-prime",
    TildeClassical => "tilde-classical",
    Quotient => "quotient",
    ResidualPrime => "residual-prime",
    Identity2Eq3 => "identity-2eq3",
    Complement => "complement",
    AnnLeftIdeal => "ann-left-ideal",
    AnnIdeal => "ann-ideal",
    AnnClassical => "ann-classical",
    Ann3PrimeFaithful => "ann-3prime-faithful",
    AnnFaithfulSubmodules => "ann-faithful-submodules",
    RnIdealShape => "rn-ideal-shape",
    RnDisjointSupports => "rn-disjoint-supports",
    RnClassical => "rn-classical",
    RnCommutation => "rn-commutation",
    RnAnnihilator => "rn-annihilator",
    RnDirectSumAnn => "rn-direct-sum-ann",
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Theorem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem {0:?}")]
pub struct UnknownTheorem(pub String);

impl FromStr for Theorem {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL.iter().copied().find(|t| t.name() == s).ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Fails,
    Vacuous,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Vacuous => "vacuous",
        })
    }
}

/// One instance on which a statement failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<ElementSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Failure {
    pub fn new(subject: Option<ElementSet>, variant: Option<Variant>, detail: impl Into<String>) -> Self {
        Self { subject, variant, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, w: Option<Witness>) -> Self {
        self.witness = w;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifierReport {
    pub theorem: Theorem,
    pub structure: String,
    /// False when the structure lies outside the statement's hypotheses; the
    /// outcome is then a finding, not a test of the statement.
    pub hypotheses_met: bool,
    pub instances_checked: usize,
    pub outcome: Outcome,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl VerifierReport {
    pub fn new(theorem: Theorem, structure: &str, hypotheses_met: bool) -> Self {
        Self {
            theorem,
            structure: structure.to_string(),
            hypotheses_met,
            instances_checked: 0,
            outcome: Outcome::Vacuous,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Counts one instance and records a failure when `ok` is false.
    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.instances_checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Sets the outcome from the recorded instances.
    pub fn finish(mut self) -> Self {
        self.outcome = if !self.failures.is_empty() {
            Outcome::Fails
        } else if self.instances_checked == 0 {
            Outcome::Vacuous
        } else {
            Outcome::Holds
        };
        self
    }

    /// A failure inside the statement's hypotheses.
    pub fn is_violation(&self) -> bool {
        self.outcome == Outcome::Fails && self.hypotheses_met
    }
}

/// Whether a module meets the standing assumptions (valid axioms and a
/// zero-symmetric ring), with the reasons when it does not.
pub fn standing_hypotheses(m: &FiniteModule) -> (bool, Vec<String>) {
    let mut why = Vec::new();
    if !m.ring().is_near_ring() {
        why.push("ring tables violate the near-ring axioms".to_string());
    }
    if !m.violations().is_empty() {
        why.push("action violates the module axioms".to_string());
    }
    if !m.ring().flags().zero_symmetric {
        why.push("ring is not zero-symmetric".to_string());
    }
    (why.is_empty(), why)
}
