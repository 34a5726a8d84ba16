use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn catslash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catslash")).args(args).current_dir(fixtures()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn pipeline_into(dir: &Path, goals: Option<&str>) -> Output {
    let out = dir.to_str().unwrap();
    let mut args = vec!["pipeline", "--theory", "demo/demo.theory", "--tiny", "tiny.category", "--out", out];
    if let Some(g) = goals {
        args.extend(["--goals", g]);
    }
    catslash(&args)
}

#[test]
fn shipped_fixtures_check() {
    let o = catslash(&["check", "demo", "two_arrows", "inconsistent", "uncertified", "tiny.category"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("ok ")));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(".proof")).count(), 22);
}

#[test]
fn ill_formed_theory_fails_check() {
    let o = catslash(&["check", "invalid/ill_formed.theory"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("IllFormedQuantifier"), "{}", stdout(&o));
}

#[test]
fn category_with_missing_row_fails_check() {
    let o = catslash(&["check", "invalid/missing_row.category"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("missing composition row"), "{}", stdout(&o));
}

#[test]
fn missing_path_is_an_error() {
    let o = catslash(&["check", "no/such/file.theory"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no such file"), "{}", stderr(&o));
}

#[test]
fn proved_certificates_check() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("found.proof");
    let goal = "exists x : One -> A . comp s x = a1";
    let o = catslash(&["prove", "--theory", "demo/demo.theory", "--goal", goal, "--out", cert.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&cert).unwrap().starts_with(&format!("goal {goal}\n")));
    let o = catslash(&["check", "--theory", "demo/demo.theory", cert.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn unprovable_goal_is_refused() {
    let o = catslash(&["prove", "--theory", "two_arrows/two_arrows.theory", "--goal", "a1 = a2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("refutes"), "{}", stderr(&o));
}

#[test]
fn slash_reports_the_verdict_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("fp.json");
    let o = catslash(&[
        "slash",
        "--theory",
        "two_arrows/two_arrows.theory",
        "--model",
        "two_arrows/two_arrows.model",
        "--formula",
        "a1 = a2 \\/ (a1 = a2 => bot)",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "FP(a1 = a2 \\/ (a1 = a2 => bot)) = false");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["verdict"], false);
}

#[test]
fn extract_covers_the_corpus() {
    let o = catslash(&["extract", "--theory", "demo/demo.theory", "demo/goals"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let goals: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with("consistent")).collect();
    assert_eq!(goals.len(), 22, "{text}");
    assert!(goals.iter().any(|l| l.contains("witness x := a2")));
    assert!(goals.iter().any(|l| l.contains("disjunct left")));
    assert!(!text.contains("rejected"));
    assert!(text.ends_with("consistent: yes\n"));
}

#[test]
fn glue_writes_the_cover() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = catslash(&["glue", "--theory", "two_arrows/two_arrows.theory", "--tiny", "tiny.category", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("7 objects over it"), "{}", stdout(&o));
    for f in ["legend.txt", "cover.category", "glued.theory"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let o = catslash(&["check", dir.path().join("cover.category").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn pipeline_output_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = pipeline_into(d.path(), Some("demo/goals"));
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for f in ["report.txt", "report.json", "legend.txt"] {
        let (x, y) = (fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap());
        assert!(x == y, "{f} differs between runs");
    }
    let report = fs::read_to_string(a.path().join("report.txt")).unwrap();
    assert!(report.ends_with("consistent: yes\n"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["goals"].as_array().unwrap().len(), 22);
    assert!(json["goals"].as_array().unwrap().iter().all(|g| g["status"] == "extracted"));
}

#[test]
fn pipeline_without_goals_reports_the_construction() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipeline_into(dir.path(), None);
    assert!(o.status.success(), "{}", stderr(&o));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(json["goals"].as_array().unwrap().is_empty());
    assert_eq!(json["metadata"]["cover_objects"], 10);
}

#[test]
fn pipeline_aborts_on_an_uncertified_axiom() {
    let o = catslash(&["pipeline", "--theory", "uncertified/uncertified.theory", "--tiny", "tiny.category"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("axiom `bang` has no true FP certificate"), "{}", stderr(&o));
}

#[test]
fn unknown_oracle_is_rejected() {
    let o = catslash(&["check", "--oracle", "psychic", "demo"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_oracle_is_selectable() {
    let o = catslash(&["prove", "--theory", "demo/demo.theory", "--oracle", "search", "--depth", "4", "--goal", "comp s a1 = a2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("0 AXIOM - | swap1"));
}
