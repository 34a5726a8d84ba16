//! Commands of the `catslash` front end. Each command reads fixture files,
//! returns what it would print, and leaves file output to the caller.

pub mod inputs;
pub mod pipeline;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};

use catslash::extractor::{certify_axioms, run_criterion, CriterionReport};
use catslash::freyd::{comma_glue, global_sections, print_category, star_theory};
use catslash::kernel::{check_proof, write_certificate, Judgement};
use catslash::slash::{fp_eval, FpCertificate};
use catslash::syntax::parse_formula;
use catslash::theoria::{print_theory, term_complete_extension, Answer, CongruenceOracle, Extension, Oracle};

use inputs::{files_with_extension, load_category, load_model, load_proof, load_theory, nearest_theory};

pub use pipeline::{run_pipeline, PipelineConfig, PipelineReport};

/// Budget of the term-complete extension when a command takes none.
pub const DEFAULT_BUDGET: usize = 256;

/// The term-complete extension of the theory at `path`. Slash evaluation
/// and extraction take place there, where every closed arrow term has a
/// canonical constant.
pub fn completed_theory(path: &Path, budget: usize, oracle: Arc<dyn Oracle>) -> Result<Extension> {
    let t = load_theory(path, oracle)?;
    term_complete_extension(t, budget).map_err(|e| anyhow!("{}: term-complete extension: {e}", path.display()))
}

/// Outcome of `check`: one diagnostic line per file, and whether all passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub lines: Vec<String>,
    pub ok: bool,
}

fn check_file(path: &Path, theory: Option<&Path>, oracle: &dyn Fn() -> Arc<dyn Oracle>) -> Result<()> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    match ext {
        "theory" => load_theory(path, oracle()).map(drop),
        "category" => load_category(path).map(drop),
        "model" | "proof" => {
            let theory_path = theory
                .map(Path::to_path_buf)
                .or_else(|| nearest_theory(path))
                .ok_or_else(|| anyhow!("{}: no theory to check against; pass --theory", path.display()))?;
            if ext == "model" {
                let e = completed_theory(&theory_path, DEFAULT_BUDGET, oracle())?;
                load_model(Some(path), &e.target).map(drop)
            } else {
                let t = load_theory(&theory_path, oracle())?;
                let (goal, proof) = load_proof(path, &t)?;
                check_proof(t.as_ref(), &Judgement::closed(goal), &proof).map_err(|e| anyhow!("{}: {e}", path.display()))
            }
        }
        _ => Ok(()),
    }
}

/// Parses and checks every fixture file under `paths`: theories,
/// categories, models and proof certificates.
pub fn check(paths: &[PathBuf], theory: Option<&Path>, oracle: &dyn Fn() -> Arc<dyn Oracle>) -> Result<CheckOutcome> {
    let mut files = Vec::new();
    for p in paths {
        if !p.exists() {
            bail!("{}: no such file or directory", p.display());
        }
        for ext in ["theory", "category", "model", "proof"] {
            files.extend(files_with_extension(p, ext)?);
        }
    }
    files.sort();
    let mut out = CheckOutcome { lines: Vec::new(), ok: true };
    for f in files {
        match check_file(&f, theory, oracle) {
            Ok(()) => out.lines.push(format!("ok {}", f.display())),
            Err(e) => {
                out.ok = false;
                out.lines.push(format!("error {e:#}"));
            }
        }
    }
    Ok(out)
}

/// Asks the oracle for a proof of `goal` and returns its certificate.
pub fn prove(theory: &Path, goal: &str, oracle: Arc<dyn Oracle>) -> Result<String> {
    let t = load_theory(theory, oracle)?;
    let phi = parse_formula(&t.signature, goal).map_err(|e| anyhow!("goal:{e}"))?;
    match t.ask(&phi) {
        Answer::Yes(p) => Ok(write_certificate(Some(&Judgement::closed(phi)), &p)),
        Answer::No => bail!("the oracle refutes `{goal}`"),
        Answer::Unknown => bail!("the oracle found no proof of `{goal}`"),
    }
}

/// Evaluates `FP(φ)` in the term-complete extension of the theory. The
/// formula is read over the theory's own signature and translated.
pub fn slash(theory: &Path, model: Option<&Path>, formula: &str, budget: usize, oracle: Arc<dyn Oracle>) -> Result<FpCertificate> {
    let e = completed_theory(theory, budget, oracle)?;
    let m = load_model(model, &e.target)?;
    let phi = parse_formula(&e.source.signature, formula).map_err(|e| anyhow!("formula:{e}"))?;
    Ok(fp_eval(&e.target, &m, &e.translation.formula(&phi))?)
}

/// Checks every proof against the theory, carries it into the
/// term-complete extension, certifies the axioms there and extracts, in
/// path order.
pub fn extract(
    theory: &Path,
    model: Option<&Path>,
    proofs: &[PathBuf],
    budget: usize,
    oracle: Arc<dyn Oracle>,
) -> Result<CriterionReport> {
    let e = completed_theory(theory, budget, oracle)?;
    let m = load_model(model, &e.target)?;
    let certs = certify_axioms(&e.target, &m)?;
    let mut goals = Vec::new();
    for p in proofs {
        for f in files_with_extension(p, "proof")? {
            let (phi, proof) = load_proof(&f, &e.source)?;
            check_proof(e.source.as_ref(), &Judgement::closed(phi.clone()), &proof)
                .map_err(|err| anyhow!("{}: {err}", f.display()))?;
            goals.push((proof.substitute(&e.translation, &BTreeSet::new()), e.translation.formula(&phi)));
        }
    }
    Ok(run_criterion(&e.target, &m, &certs, &goals)?)
}

/// Files written by `glue`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueOutput {
    pub summary: String,
    pub legend: String,
    pub category: String,
    pub theory: String,
}

/// Builds the cover of a theory along a finite category.
pub fn glue(theory: &Path, tiny: &Path, budget: usize, oracle: Arc<dyn Oracle>) -> Result<GlueOutput> {
    let t = load_theory(theory, oracle)?;
    let tiny = load_category(tiny)?;
    let e = term_complete_extension(t, budget)?;
    let gs = global_sections(&e)?;
    let f = comma_glue(&tiny, &e.target, &gs)?;
    let star = star_theory(&f, e.target.clone())?;
    let mut summary = format!("cover of {} along {}\n", e.target.name, tiny.name);
    for (s, x) in &f.gs_objects {
        let _ = writeln!(summary, "  {s}: {} global sections, image {x}, {} objects over it", gs.elements[s].len(), f.over(s).len());
    }
    let _ = writeln!(summary, "  {} objects, {} arrows, terminal {}", f.objects.len(), f.arrows.len(), f.unit);
    Ok(GlueOutput { summary, legend: f.legend(), category: print_category(&f.category), theory: print_theory(&star) })
}

/// The default oracle for commands that take none.
pub fn default_oracle() -> Arc<dyn Oracle> {
    Arc::new(CongruenceOracle::default())
}
