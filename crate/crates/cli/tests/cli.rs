use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qcurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcurv")).args(args).output().expect("spawn qcurv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = qcurv(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn curvature_scan_worked_example() {
    let o = qcurv(&["curvature-scan", "--q", "8", "--pmax", "50", "--system", r#"[["1","3"],["0","1"]]"#]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().find(|l| l.split_whitespace().next() == Some("3")).expect("p = 3 row");
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols, ["3", "2", "2", "yes", "identity", "unipotent(2)"]);

    let v = json(&["curvature-scan", "--q", "8", "--pmax", "50", "--system", r#"[["1","3"],["0","1"]]"#]);
    let entries = v["result"]["entries"].as_array().unwrap();
    let e3 = entries.iter().find(|e| e["p"] == 3).unwrap();
    assert_eq!(e3["kappa"], 2);
    assert_eq!(e3["ell"], 2);
}

#[test]
fn envelope_and_hash() {
    let a = json(&["curvature-scan", "--q", "8", "--pmax", "20", "--system", r#"[["1","3"],["0","1"]]"#]);
    let b = json(&["curvature-scan", "--q", "16/2", "--pmax", "20", "--system", r#"[["2/2","6/2"],["0","x/x"]]"#]);
    for k in ["tool_version", "command", "q", "inputs_hash", "result"] {
        assert!(a.get(k).is_some(), "missing {k}");
    }
    assert_eq!(a["command"], "curvature-scan");
    assert_eq!(a["q"], "8");
    assert_eq!(a["inputs_hash"].as_str().unwrap().len(), 64);
    assert_eq!(a["inputs_hash"], b["inputs_hash"]);
    let c = json(&["curvature-scan", "--q", "8", "--pmax", "21", "--system", r#"[["1","3"],["0","1"]]"#]);
    assert_ne!(a["inputs_hash"], c["inputs_hash"]);
}

#[test]
fn qcalc_eval_values() {
    assert_eq!(stdout(&qcurv(&["qcalc-eval", "--q", "2", "qbinom(4,2)"])).trim(), "35");
    assert_eq!(stdout(&qcurv(&["qcalc-eval", "--q", "2", "qint(3)"])).trim(), "7");
    assert_eq!(stdout(&qcurv(&["qcalc-eval", "--q", "2", "qfact(3)"])).trim(), "21");
    assert_eq!(stdout(&qcurv(&["qcalc-eval", "--q", "3", "qpoch(1/2,2)"])).trim(), "-1/4");
    assert_eq!(stdout(&qcurv(&["qcalc-eval", "--q", "2", "dq(x^2)"])).trim(), "3*x");
}

#[test]
fn errors_exit_nonzero_with_position() {
    let o = qcurv(&["rational-solve", "--q", "2", "--system", r#"[["x +* 2"]]"#]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
    let o = qcurv(&["rational-solve", "--q", "2", "--system", r#"[["1/(x-x)"]]"#]);
    assert!(!o.status.success());
    let o = qcurv(&["rational-solve", "--q", "1", "--system", r#"[["1"]]"#]);
    assert!(!o.status.success());
}

#[test]
fn stdin_document_and_out_file() {
    let dir = std::env::temp_dir().join(format!("qcurv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_qcurv"))
        .args(["rational-solve", "--out", out.to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"q": "2/3", "system": [["1", "x"], ["0", "1"]]}"#).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("verified rational basis"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["outcome"], "basis");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn grothendieck_verdicts() {
    let v = json(&["grothendieck", "--q", "2/3", "--pmax", "40", "--system", r#"[["1","x"],["0","1"]]"#]);
    assert_eq!(v["result"]["verdict"]["verdict"], "consistent_trivial");
    let v = json(&["grothendieck", "--q", "6", "--pmax", "40", "--terms", "40", "--degree-cap", "6", "--system", r#"[["1+5*x"]]"#]);
    assert_eq!(v["result"]["verdict"]["verdict"], "consistent_nontrivial");
}

#[test]
fn schwarz_and_galois() {
    let v = json(&["schwarz", "--q", "2", "--a", "q", "--b", "q^3", "--c", "q^3"]);
    assert_eq!(v["result"]["rational_basis"], true);
    let v = json(&["schwarz", "--q", "2", "--a", "q", "--b", "q^(1/2)", "--c", "q^(3/2)"]);
    assert_eq!(v["result"]["rational_basis"], false);
    assert_eq!(v["result"]["algebraic_basis"], true);

    let v = json(&["galois", "--q", "2", "--family", "rank1", "--b", "q^(1/2)"]);
    assert_eq!(v["result"]["group"]["family"], "Mu");
    assert_eq!(v["result"]["group"]["d"], 2);
    let v = json(&["galois", "--q", "2", "--family", "rank1", "--b", "1+x"]);
    assert_eq!(v["result"]["group"]["family"], "Gm");
    let v = json(&["galois", "--q", "4", "--family", "antidiagonal", "--r", "2", "--check-pmax", "40"]);
    assert_eq!(v["result"]["membership"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn chi_kappa_and_casorati() {
    let v = json(&["chi", "--q", "6", "--p", "5", "--terms", "100", "--system", r#"[["1+5*x"]]"#]);
    assert_eq!(v["result"]["estimate"]["log_chi"], "-6/25");
    let v = json(&["kappa-sum", "--q", "2", "--pmax", "100", "--compare", "1/2"]);
    assert_eq!(v["result"]["comparison"]["equal"], true);
    let v = json(&["casorati", "--q", "2", "1", "x", "2*x+3"]);
    assert_eq!(v["result"]["rank"], 2);
    let v = json(&["cyclic-vector", "--q", "2", "--system", r#"[["1","x"],["0","2"]]"#]);
    assert_eq!(v["result"]["companion"][0][0], "0");
}
