//! The end-to-end run: complete the theory, glue its global sections to a
//! finite category, and extract witnesses from goal proofs in the glued
//! theory and model.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, Context as _, Result};
use serde::Serialize;

use catslash::extractor::{certify_axioms, describe, run_criterion, GoalRecord, GoalStatus, Payload};
use catslash::freyd::{comma_glue, freyd_model, global_sections, star_theory, FreydCategory};
use catslash::kernel::{check_proof, Judgement};
use catslash::slash::validate_model;
use catslash::theoria::term_complete_extension;

use crate::inputs::{file_name, files_with_extension, load_category, load_proof, load_theory, OracleChoice};

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub theory: PathBuf,
    pub tiny: PathBuf,
    /// A directory of `.proof` files, or a single one. `None` runs the
    /// construction with no goals.
    pub goals: Option<PathBuf>,
    pub oracle: OracleChoice,
    pub depth: usize,
    pub budget: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub theory: String,
    pub tiny: String,
    pub oracle: String,
    pub budget: usize,
    pub completed_constants: usize,
    pub merged_constants: usize,
    pub cover_objects: usize,
    pub cover_arrows: usize,
    pub certified_axioms: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineGoal {
    pub file: String,
    pub source: String,
    #[serde(flatten)]
    pub record: GoalRecord,
    /// Base-theory constant behind each witness, in payload order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness_minus: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub metadata: Metadata,
    pub goals: Vec<PipelineGoal>,
    pub consistent: bool,
    #[serde(skip)]
    pub legend: String,
}

fn oracle_label(c: &OracleChoice, depth: usize) -> String {
    match c {
        OracleChoice::Congruence => "congruence".into(),
        OracleChoice::Search => format!("search:{depth}"),
        OracleChoice::Certs(dir) => format!("certs:{}", file_name(dir)),
    }
}

fn minus_of(f: &FreydCategory, c: &str) -> String {
    f.arrows.get(c).map(|a| a.minus.clone()).unwrap_or_else(|| c.to_string())
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineReport> {
    let t = load_theory(&cfg.theory, cfg.oracle.build(cfg.depth))?;
    let tiny = load_category(&cfg.tiny)?;
    let ext = term_complete_extension(t.clone(), cfg.budget).context("term-complete extension")?;
    let gs = global_sections(&ext).context("global sections")?;
    let cover = comma_glue(&tiny, &ext.target, &gs).context("gluing")?;
    let star = Arc::new(star_theory(&cover, ext.target.clone()).context("glued theory")?);
    let model = freyd_model(&cover, star.clone());
    validate_model(&star, &model).context("glued model")?;
    let certs = certify_axioms(&star, &model).context("axiom certification")?;

    let goal_files = match &cfg.goals {
        Some(dir) => files_with_extension(dir, "proof")?,
        None => Vec::new(),
    };
    let to_star = ext.translation.then(&cover.section());
    let mut sources = Vec::new();
    let mut goals = Vec::new();
    for path in &goal_files {
        let (goal, proof) = load_proof(path, &t)?;
        check_proof(t.as_ref(), &Judgement::closed(goal.clone()), &proof)
            .map_err(|e| anyhow!("{}: {e}", path.display()))?;
        sources.push((file_name(path), catslash::syntax::print_formula(&goal)));
        goals.push((proof.substitute(&to_star, &BTreeSet::new()), to_star.formula(&goal)));
    }
    let criterion = run_criterion(&star, &model, &certs, &goals).context("extraction")?;

    let goals = sources
        .into_iter()
        .zip(criterion.goals)
        .map(|((file, source), record)| {
            let witness_minus = match &record.status {
                GoalStatus::Extracted { payload: Payload::Witness { assignment }, .. } => {
                    assignment.iter().map(|(_, c)| minus_of(&cover, c)).collect()
                }
                _ => Vec::new(),
            };
            PipelineGoal { file, source, record, witness_minus }
        })
        .collect();
    let completion = ext.report.clone().unwrap_or_default();
    let metadata = Metadata {
        theory: t.name.clone(),
        tiny: tiny.name.clone(),
        oracle: oracle_label(&cfg.oracle, cfg.depth),
        budget: cfg.budget,
        completed_constants: ext.target.signature.arrows.len(),
        merged_constants: completion.merged.len(),
        cover_objects: cover.objects.len(),
        cover_arrows: cover.arrows.len(),
        certified_axioms: certs.keys().cloned().collect(),
    };
    Ok(PipelineReport { metadata, goals, consistent: criterion.consistent, legend: cover.legend() })
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let m = &self.metadata;
        let mut out = String::new();
        let _ = writeln!(out, "pipeline report for {} glued along {}", m.theory, m.tiny);
        let _ = writeln!(out, "oracle: {}, budget: {}", m.oracle, m.budget);
        let _ = writeln!(out, "term-complete extension: {} arrow constants, {} merged", m.completed_constants, m.merged_constants);
        let _ = writeln!(out, "cover: {} objects, {} arrows", m.cover_objects, m.cover_arrows);
        let _ = writeln!(out, "certified axioms: {}", m.certified_axioms.join(", "));
        for g in &self.goals {
            let outcome = match &g.record.status {
                GoalStatus::Extracted { payload, .. } => describe(payload),
                GoalStatus::Rejected { reason } => format!("rejected ({reason})"),
            };
            let _ = writeln!(out, "{}: {}", g.file, g.source);
            if g.witness_minus.is_empty() {
                let _ = writeln!(out, "  {outcome}");
            } else {
                let _ = writeln!(out, "  {outcome}  (base: {})", g.witness_minus.join(", "));
            }
        }
        let _ = writeln!(out, "consistent: {}", if self.consistent { "yes" } else { "no" });
        out
    }
}
