//! Three-valued check outcomes with certificates and witnesses.

use crate::form::InvariantForm;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certified,
    Refuted,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Certified => write!(f, "certified"),
            Outcome::Refuted => write!(f, "refuted"),
            Outcome::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Form(InvariantForm),
    Vector(Vec<Scalar>),
    Generator(u8),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Form(w) => write!(f, "{w}"),
            Witness::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Witness::Generator(g) => write!(f, "phi{g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Short tag naming the deciding method (`chain`, `split`, `minimize`, ...).
    pub method: String,
    pub witness: Option<Witness>,
    /// Free-text diagnostics; empty when there is nothing to say.
    pub detail: String,
}

impl Verdict {
    pub fn certified(method: &str) -> Self {
        Verdict {
            outcome: Outcome::Certified,
            method: method.to_string(),
            witness: None,
            detail: String::new(),
        }
    }

    pub fn refuted(method: &str, witness: Witness) -> Self {
        Verdict {
            outcome: Outcome::Refuted,
            method: method.to_string(),
            witness: Some(witness),
            detail: String::new(),
        }
    }

    pub fn unknown(method: &str, detail: &str) -> Self {
        Verdict {
            outcome: Outcome::Unknown,
            method: method.to_string(),
            witness: None,
            detail: detail.to_string(),
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }

    pub fn is_certified(&self) -> bool {
        self.outcome == Outcome::Certified
    }

    pub fn is_refuted(&self) -> bool {
        self.outcome == Outcome::Refuted
    }

    pub fn is_unknown(&self) -> bool {
        self.outcome == Outcome::Unknown
    }

    /// Canonical report line `check=<name> verdict=<...> witness=<...>`.
    pub fn report_line(&self, check: &str) -> String {
        let witness = match &self.witness {
            Some(w) => format!("{w}"),
            None => "none".to_string(),
        };
        format!("check={check} verdict={} witness={witness}", self.outcome)
    }
}
