use std::process::{Command, Output};

fn aft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aft"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_vee() {
    let o = aft(&["check", "data/vee.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("bounded-complete cpo; flower framework axioms: pass\n"), "{}", stdout(&o));
}

#[test]
fn check_complete_lattice_runs_both_frameworks() {
    let o = aft(&["check", "data/diamond.json", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["frameworks"]["interval"]["status"], "pass");
    assert_eq!(v["frameworks"]["flower"]["status"], "pass");
    assert_eq!(v["classification"]["is_complete_lattice"], true);
}

#[test]
fn check_rejects_cycles_and_non_cpos() {
    let o = aft(&["check", "data/cyclic.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cycle"));
    let o = aft(&["check", "data/bowtie.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("no approximation framework applies"));
}

#[test]
fn parse_errors_report_position() {
    let dir = std::env::temp_dir().join(format!("aft-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\n  \"atoms\": [\"p\"],\n  \"rules\": [\n}").unwrap();
    let o = aft(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = aft(&["solve", "data/missing.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ael_theory_over_both_spaces() {
    let o = aft(&["solve", "data/ael_beliefs.json", "--space", "interval", "--semantics", "wf", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["semantics"]["wf"]["alb"], "{{},{p},{q},{p,q},{r},{p,r},{q,r},{p,q,r}}");
    assert_eq!(v["semantics"]["wf"]["aub"], "{}");
    assert_eq!(v["semantics"]["wf"]["exact"], false);

    let o = aft(&["solve", "data/ael_beliefs.json", "--space", "flower", "--semantics", "wf"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("WF = ⟨{{q},{p,q}} | {{{q},{p,q}}}⟩"), "{}", stdout(&o));
}

#[test]
fn review_wadf_needs_flowers() {
    let o = aft(&["solve", "data/review_wadf.json", "--space", "interval"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("not a complete lattice") && err.contains("use --space flower"), "{err}");
    let o = aft(&["solve", "data/review_wadf.json", "--space", "flower", "--semantics", "kk"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(accept,borderline,tendency-accept)"));
}

#[test]
fn fitting_only_for_programs_over_intervals() {
    let o = aft(&["solve", "data/ael_beliefs.json", "--approximator", "fitting"]);
    assert_eq!(o.status.code(), Some(3));
    let o = aft(&["solve", "data/even_loop.json", "--space", "flower", "--approximator", "fitting"]);
    assert_eq!(o.status.code(), Some(3));
    let o = aft(&["solve", "data/vee.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_fitting_with_ultimate() {
    let o = aft(&["compare", "data/self_support.json", "--left", "interval:fitting", "--right", "interval:ultimate"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("WF(fitting) ≤p WF(ultimate): true"), "{out}");
    assert!(out.contains("WF(ultimate) ≤p WF(fitting): false"), "{out}");
    assert!(out.contains("ST(fitting) ⊆ ST(ultimate): true"), "{out}");
}

#[test]
fn compare_spaces_on_ael_theory() {
    let o = aft(&[
        "compare", "data/ael_beliefs.json", "--left", "interval", "--right", "flower", "--semantics", "wf", "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdicts"]["wf_left_leq_right"], true);
    assert_eq!(v["verdicts"]["wf_right_leq_left"], false);
}

#[test]
fn compare_identical_configs() {
    let o = aft(&["compare", "data/even_loop.json", "--left", "interval", "--right", "interval:ultimate"]);
    let out = stdout(&o);
    for s in ["KK", "WF", "SUP", "ST"] {
        assert!(out.contains(&format!("{s}(left) = {s}(right): true")), "{out}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "data/review_wadf.json", "--format", "json", "--seed", "7", "--samples", "50"];
    let (a, b) = (aft(&args), aft(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn element_cap_is_enforced() {
    let o = aft(&["solve", "data/ael_beliefs.json", "--max-elements", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap is 100"), "{}", stderr(&o));
}
