//! Loading fixture files and choosing an oracle.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};

use catslash::freyd::{parse_category, FiniteCategory};
use catslash::kernel::{parse_certificate, Judgement, P};
use catslash::slash::{parse_model, validate_model, CompTable, Model};
use catslash::syntax::Formula;
use catslash::theoria::{parse_theory, CertDb, CongruenceOracle, Oracle, SearchOracle, Theory, TheoryError};

/// Which oracle answers provability queries about the input theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleChoice {
    Congruence,
    Search,
    Certs(PathBuf),
}

impl FromStr for OracleChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "congruence" => Ok(OracleChoice::Congruence),
            "search" => Ok(OracleChoice::Search),
            _ => match s.strip_prefix("certs:") {
                Some(dir) if !dir.is_empty() => Ok(OracleChoice::Certs(dir.into())),
                _ => Err(format!("unknown oracle `{s}`; expected congruence, search or certs:<dir>")),
            },
        }
    }
}

impl OracleChoice {
    pub fn build(&self, depth: usize) -> Arc<dyn Oracle> {
        match self {
            OracleChoice::Congruence => Arc::new(CongruenceOracle::default()),
            OracleChoice::Search => Arc::new(SearchOracle::new(depth)),
            OracleChoice::Certs(dir) => Arc::new(CertDb::new(dir)),
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))
}

/// Parses and checks a theory file. Ill-formed axioms are reported with
/// the name of the well-formedness failure.
pub fn load_theory(path: &Path, oracle: Arc<dyn Oracle>) -> Result<Arc<Theory>> {
    let text = read(path)?;
    let file = parse_theory(&text).map_err(|e| anyhow!("{}:{e}", path.display()))?;
    file.into_theory(oracle).map(Arc::new).map_err(|e| match &e {
        TheoryError::IllFormedAxiom { source, .. } => anyhow!("{}: {}: {e}", path.display(), source.code()),
        _ => anyhow!("{}: {e}", path.display()),
    })
}

pub fn load_category(path: &Path) -> Result<FiniteCategory> {
    parse_category(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// A model file over `t`, or the discrete model when no path is given.
/// The composition table is filled from the theory's oracle.
pub fn load_model(path: Option<&Path>, t: &Arc<Theory>) -> Result<Model> {
    let table = CompTable::from_oracle(t);
    let m = match path {
        Some(p) => parse_model(t.clone(), table, &read(p)?).map_err(|e| anyhow!("{}: {e}", p.display()))?,
        None => Model::discrete(t.clone(), table),
    };
    validate_model(t, &m).map_err(|e| anyhow!("model rejected: {e}"))?;
    Ok(m)
}

/// A closed proof certificate: its goal and proof.
pub fn load_proof(path: &Path, t: &Theory) -> Result<(Formula, P)> {
    let cert = parse_certificate(&t.signature, &read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let Some(Judgement { ctx, hyps, goal }) = cert.judgement() else {
        bail!("{}: certificate has no `goal` line", path.display())
    };
    if !ctx.is_empty() || !hyps.is_empty() {
        bail!("{}: expected a closed goal without hypotheses", path.display());
    }
    Ok((goal, cert.proof))
}

/// Files under `root` with the given extension, sorted by path.
pub fn files_with_extension(root: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    if root.is_file() {
        if root.extension().is_some_and(|e| e == ext) {
            out.push(root.to_path_buf());
        }
        return Ok(out);
    }
    let entries = fs::read_dir(root).with_context(|| format!("{}: cannot list", root.display()))?;
    for entry in entries {
        out.extend(files_with_extension(&entry?.path(), ext)?);
    }
    out.sort();
    Ok(out)
}

/// The only `.theory` file in the directory of `path` or the nearest
/// ancestor that has one.
pub fn nearest_theory(path: &Path) -> Option<PathBuf> {
    let mut dir = path.parent();
    while let Some(d) = dir {
        let found: Vec<PathBuf> = fs::read_dir(d)
            .ok()?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "theory"))
            .collect();
        match found.len() {
            0 => dir = d.parent(),
            1 => return found.into_iter().next(),
            _ => return None,
        }
    }
    None
}

/// The file name, for reports that must not depend on where inputs live.
pub fn file_name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}
