use std::process::Command;

fn eg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eg")).args(args).current_dir(env!("CARGO_MANIFEST_DIR")).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn run_figure() {
    let (code, out) = eg(&["run", "figures/crossbar.geo"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains(", 0 failed"));
}

#[test]
fn root_refusal_is_a_failure() {
    let (code, out) = eg(&["run", "figures/nonarch/pasch_markov.geo", "--field", "nonarch"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn kripke_demo() {
    let (code, out) = eg(&["kripke", "--demo", "mp", "--samples", "20"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("fails at the root"));
}

#[test]
fn small_audit_writes_json() {
    let path = std::env::temp_dir().join(format!("eg-audit-{}.json", std::process::id()));
    let (code, _) = eg(&["audit", "--samples", "3", "--theorem-samples", "1", "--seed", "5", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["seed"], 5);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn bad_file_exits_two() {
    assert_eq!(eg(&["run", "figures/missing.geo"]).0, 2);
}
