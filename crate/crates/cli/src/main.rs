use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};

use catslash_cli::inputs::OracleChoice;
use catslash_cli::{check, extract, glue, prove, run_pipeline, slash, PipelineConfig, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "catslash", version, about = "Proof checking, slash evaluation and witness extraction for theories of categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OracleArgs {
    /// `congruence`, `search` or `certs:<dir>`.
    #[arg(long, default_value = "congruence")]
    oracle: OracleChoice,
    /// Proof size bound for the search oracle.
    #[arg(long, default_value_t = 10)]
    depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check theories, categories, models and proofs.
    Check {
        paths: Vec<PathBuf>,
        /// Theory for models and proofs; defaults to the nearest `.theory` file.
        #[arg(long)]
        theory: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Ask the oracle for a proof and print its certificate.
    Prove {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        goal: String,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the slash of a sentence in a model.
    Slash {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Write the certificate as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract witnesses and disjuncts from proofs.
    Extract {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        proofs: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the cover of a theory along a finite category.
    Glue {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        tiny: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Directory for the legend, the cover and the glued theory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run completion, gluing, certification and extraction end to end.
    Pipeline {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        tiny: PathBuf,
        #[arg(long)]
        goals: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Directory for `report.txt`, `report.json` and `legend.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("{}: cannot create", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("{}: cannot write", path.display()))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check { paths, theory, oracle } => {
            let outcome = check(&paths, theory.as_deref(), &|| oracle.oracle.build(oracle.depth))?;
            for l in &outcome.lines {
                println!("{l}");
            }
            Ok(outcome.ok)
        }
        Command::Prove { theory, goal, oracle, out } => {
            let cert = prove(&theory, &goal, oracle.oracle.build(oracle.depth))?;
            match out {
                Some(p) => write(&p, &cert)?,
                None => print!("{cert}"),
            }
            Ok(true)
        }
        Command::Slash { theory, model, formula, budget, oracle, out } => {
            let cert = slash(&theory, model.as_deref(), &formula, budget, oracle.oracle.build(oracle.depth))?;
            println!("FP({}) = {}", cert.formula, cert.verdict);
            if let Some(p) = out {
                write(&p, &(cert.to_json() + "\n"))?;
            }
            Ok(true)
        }
        Command::Extract { theory, model, proofs, budget, oracle, out } => {
            let report = extract(&theory, model.as_deref(), &proofs, budget, oracle.oracle.build(oracle.depth))?;
            print!("{}", report.to_text());
            if let Some(p) = out {
                write(&p, &(report.to_json() + "\n"))?;
            }
            Ok(true)
        }
        Command::Glue { theory, tiny, budget, oracle, out } => {
            let g = glue(&theory, &tiny, budget, oracle.oracle.build(oracle.depth))?;
            print!("{}", g.summary);
            if let Some(dir) = out {
                write(&dir.join("legend.txt"), &g.legend)?;
                write(&dir.join("cover.category"), &g.category)?;
                write(&dir.join("glued.theory"), &g.theory)?;
            }
            Ok(true)
        }
        Command::Pipeline { theory, tiny, goals, budget, oracle, out } => {
            let cfg = PipelineConfig { theory, tiny, goals, oracle: oracle.oracle, depth: oracle.depth, budget };
            let report = run_pipeline(&cfg)?;
            print!("{}", report.to_text());
            if let Some(dir) = out {
                write(&dir.join("report.txt"), &report.to_text())?;
                write(&dir.join("report.json"), &report.to_json())?;
                write(&dir.join("legend.txt"), &report.legend)?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
