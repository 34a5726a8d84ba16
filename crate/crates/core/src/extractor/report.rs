//! Batch extraction over a list of goals, with text and JSON reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::kernel::{check_proof, Judgement, P};
use crate::slash::Model;
use crate::syntax::{print_formula, Formula};
use crate::theoria::{CertDb, Theory};

use super::{extract, AxiomCerts, ExtractionError, Payload, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GoalStatus {
    Extracted { payload: Payload, certificate: String, verdict: bool },
    Rejected { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalRecord {
    pub formula: String,
    pub digest: String,
    #[serde(flatten)]
    pub status: GoalStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub theory: String,
    pub goals: Vec<GoalRecord>,
    /// No goal concluded `bot`.
    pub consistent: bool,
}

/// Extracts every goal. Proofs the kernel rejects are reported and skipped;
/// an accepted proof of `bot` is an internal soundness failure.
pub fn run_criterion(
    t: &Theory,
    m: &Model,
    axioms: &AxiomCerts,
    goals: &[(P, Formula)],
) -> Result<CriterionReport, ExtractionError> {
    let mut report = CriterionReport { theory: t.name.clone(), goals: Vec::new(), consistent: true };
    for (proof, phi) in goals {
        let formula = print_formula(phi);
        let digest = CertDb::key(phi);
        if let Err(e) = check_proof(t, &Judgement::closed(phi.clone()), proof) {
            report.goals.push(GoalRecord { formula, digest, status: GoalStatus::Rejected { reason: e.to_string() } });
            continue;
        }
        if *phi == Formula::Bot {
            return Err(ExtractionError::InconsistencyWitness);
        }
        let r = extract(t, m, axioms, proof, phi)?;
        let certificate = r.certificate_key();
        let status = GoalStatus::Extracted {
            payload: r.payload,
            certificate,
            verdict: r.certificate.verdict,
        };
        report.goals.push(GoalRecord { formula, digest, status });
    }
    Ok(report)
}

impl super::ExtractionResult {
    /// Digest of the formula the certificate is about.
    pub fn certificate_key(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.certificate.formula.as_bytes()))
    }
}

pub fn describe(p: &Payload) -> String {
    match p {
        Payload::Witness { assignment } => {
            let parts: Vec<String> = assignment.iter().map(|(v, c)| format!("{v} := {c}")).collect();
            format!("witness {}", parts.join(", "))
        }
        Payload::Disjunct { side: Side::Left } => "disjunct left".into(),
        Payload::Disjunct { side: Side::Right } => "disjunct right".into(),
        Payload::Plain => "plain".into(),
    }
}

impl CriterionReport {
    /// One line per goal: digest prefix, outcome, formula.
    pub fn to_text(&self) -> String {
        let mut out = format!("criterion report for {}\n", self.theory);
        for g in &self.goals {
            let outcome = match &g.status {
                GoalStatus::Extracted { payload, .. } => describe(payload),
                GoalStatus::Rejected { reason } => format!("rejected ({reason})"),
            };
            let _ = writeln!(out, "{}  {:<32}  {}", &g.digest[..12], outcome, g.formula);
        }
        let _ = writeln!(out, "consistent: {}", if self.consistent { "yes" } else { "no" });
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
