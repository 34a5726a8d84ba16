//! Certificate databases, bounded search and delegation.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::kernel::{
    bounded_search_with, parse_certificate, rules, write_certificate, Judgement, SearchLimits, P,
};
use crate::syntax::{print_formula, Formula};

use super::{Answer, Oracle, Theory};

/// A directory of proof certificates named by the SHA-256 digest of the
/// printed goal: `<hex digest>.proof`.
#[derive(Clone, Debug)]
pub struct CertDb {
    pub dir: PathBuf,
}

impl CertDb {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CertDb { dir: dir.into() }
    }

    pub fn key(phi: &Formula) -> String {
        hex::encode(Sha256::digest(print_formula(phi).as_bytes()))
    }

    pub fn path_for(&self, phi: &Formula) -> PathBuf {
        self.dir.join(format!("{}.proof", Self::key(phi)))
    }

    /// Writes a certificate for `phi` with its goal header.
    pub fn store(&self, phi: &Formula, proof: &P) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(phi);
        fs::write(&path, write_certificate(Some(&Judgement::closed(phi.clone())), proof))?;
        Ok(path)
    }

    fn load(&self, theory: &Theory, phi: &Formula, path: &Path) -> Option<P> {
        let text = fs::read_to_string(path).ok()?;
        let cert = parse_certificate(&theory.signature, &text).ok()?;
        match &cert.goal {
            Some(g) if g != phi => None,
            _ => Some(cert.proof),
        }
    }
}

impl Oracle for CertDb {
    fn name(&self) -> String {
        format!("certdb:{}", self.dir.display())
    }
    fn query(&self, theory: &Theory, phi: &Formula) -> Answer {
        match self.load(theory, phi, &self.path_for(phi)) {
            Some(p) => Answer::Yes(p),
            None => Answer::Unknown,
        }
    }
}

/// Iterative-deepening proof search up to a proof size.
#[derive(Clone, Copy, Debug)]
pub struct SearchOracle {
    pub limits: SearchLimits,
}

impl SearchOracle {
    pub fn new(depth: usize) -> Self {
        SearchOracle { limits: SearchLimits::size(depth) }
    }
}

impl Oracle for SearchOracle {
    fn name(&self) -> String {
        format!("search:{}", self.limits.max_size)
    }
    fn query(&self, theory: &Theory, phi: &Formula) -> Answer {
        match bounded_search_with(theory, &Judgement::closed(phi.clone()), self.limits) {
            Some(p) => Answer::Yes(p),
            None => Answer::Unknown,
        }
    }
}

/// Answers for a theory with a [`Delegation`](super::Delegation) by
/// translating the query into the base theory. A positive answer is the
/// one-node proof `Imported(φ)`, which the kernel accepts by asking the base
/// theory again.
#[derive(Clone, Copy, Debug, Default)]
pub struct DelegatingOracle;

impl Oracle for DelegatingOracle {
    fn name(&self) -> String {
        "delegate".into()
    }
    fn query(&self, theory: &Theory, phi: &Formula) -> Answer {
        let Some(d) = &theory.delegation else {
            return Answer::Unknown;
        };
        match d.base.ask(&d.translation.formula(phi)) {
            Answer::Yes(_) => Answer::Yes(rules::imported(phi.clone())),
            Answer::No => Answer::No,
            Answer::Unknown => Answer::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Signature};
    use std::sync::Arc;

    #[test]
    fn certdb_replays_stored_proofs() {
        let dir = std::env::temp_dir().join(format!("catslash-certdb-{}", std::process::id()));
        let db = CertDb::new(&dir);
        let sig = Signature::new().with_object("A");
        let phi = parse_formula(&sig, "id A = id A").unwrap();
        db.store(&phi, &rules::refl(crate::syntax::Arrow::id(crate::syntax::Obj::cst("A")))).unwrap();
        let t = Theory::new("T", sig.clone(), vec![], Arc::new(db.clone())).unwrap();
        assert!(t.proves(&phi));
        let other = parse_formula(&sig, "forall X . id X = id X").unwrap();
        assert!(matches!(t.ask(&other), Answer::Unknown));
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn search_oracle_finds_small_proofs() {
        let sig = Signature::new().with_object("A");
        let t = Theory::new("T", sig.clone(), vec![], Arc::new(SearchOracle::new(6))).unwrap();
        assert!(t.proves(&parse_formula(&sig, "forall X . id X = comp (id X) (id X)").unwrap()));
    }
}
