use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shannon-lattice"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("json on stderr")
}

#[test]
fn construct_small_pair() {
    let v = json_ok(&["construct", "2", "1", "2", "1", "0"]);
    let r = &v["result"];
    assert_eq!(r["A"], serde_json::json!([["2", "1"], ["-1", "2"]]));
    assert_eq!(r["B"], serde_json::json!([["2", "-1"], ["1", "2"]]));
    assert_eq!(r["certificate"]["claim"], "α_grp(E_{5/2}^⊠2) ≥ 5");
    assert_eq!(r["subgroup"]["order"], 5);
    assert_eq!(v["ok"], true);

    let v = json_ok(&["construct", "2", "1", "2", "1", "1"]);
    assert_eq!(v["result"]["certificate"]["claim"], "α_grp(E_{10/3}^⊠2) ≥ 10");

    let v = json_ok(&["construct", "1", "1", "1", "0", "0"]);
    assert_eq!(v["result"]["degenerate"], true);
}

#[test]
fn metadata_is_embedded() {
    let v = json_ok(&["alpha-grp", "10", "4", "1", "--seed", "7", "--p0-cap", "12", "--enum-cap", "5000"]);
    let meta = &v["meta"];
    assert_eq!(meta["command"], "alpha-grp");
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["config"]["seed"], 7);
    assert_eq!(meta["caps"]["p0_order"], 12);
    assert_eq!(meta["caps"]["enumeration"], 5000);
    assert_eq!(meta["caps"]["exhaustive"], 10000);
    assert_eq!(v["result"]["alpha_grp"], 2);
}

#[test]
fn invalid_parameters_name_the_constraint() {
    let out = run(&["construct", "2", "1", "2", "3", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let e = stderr_json(&out);
    assert_eq!(e["kind"], "usage");
    assert!(e["message"].as_str().unwrap().contains("r must not exceed b"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["construct", "2", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["alpha-grp", "5", "2", "1", "--threads", "0"]).status.code(), Some(2));
    assert_eq!(run(&["mis", "5", "2", "1", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn verify_family_and_identities() {
    let v = json_ok(&["verify", "3", "1", "2", "1", "0"]);
    assert_eq!(v["result"]["verdict"], "VALID");
    assert_eq!(v["result"]["p"], "81");
    assert_eq!(v["result"]["q"], "18");

    let a = json_ok(&["verify", "--seed", "11", "--instances", "30"]);
    let b = json_ok(&["verify", "--seed", "11", "--instances", "30"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["det_formula"]["passed"], 30);
}

#[test]
fn construct_xy_checks() {
    let v = json_ok(&["construct-xy", "3", "2", "3", "1", "4"]);
    let checks = v["result"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let v = json_ok(&["construct-xy", "2", "1", "2", "1", "0"]);
    assert_eq!(v["result"]["checks"][2]["status"], "skipped");
}

#[test]
fn quotient_rows() {
    let v = json_ok(&["quotient", "14", "3", "3", "1,2,3"]);
    let r = &v["result"];
    assert_eq!(r["subgroup_order"], 14);
    assert_eq!(r["quotient_alpha"], 6);
    assert_eq!(r["bound"], 84);
    assert_eq!(r["optimal"], true);
    assert_eq!(r["verified"], true);

    let v = json_ok(&["quotient", "5", "2", "1", "0"]);
    assert_eq!(v["result"]["bound"], 2);

    let out = run(&["quotient", "14", "3", "3", "1,1,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["kind"], "check_failed");
}

#[test]
fn mis_budget_and_dimacs() {
    let v = json_ok(&["mis", "5", "2", "2"]);
    assert_eq!(v["result"]["alpha"], 5);
    assert_eq!(v["result"]["witness_vertices"].as_array().unwrap().len(), 5);

    let out = run(&["mis", "7", "2", "2", "--general", "--budget-nodes", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["optimal"], false);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.dimacs");
    std::fs::write(&path, "c five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    let v = json_ok(&["mis", "--dimacs", path.to_str().unwrap()]);
    assert_eq!(v["result"]["alpha"], 2);
    assert_eq!(v["result"]["solver"], "general");

    std::fs::write(&path, "p edge 3 1\ne 1 9\n").unwrap();
    let out = run(&["mis", "--dimacs", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn caps_exit_three() {
    let out = run(&["mis", "9", "2", "6"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["kind"], "cap_exceeded");
    let out = run(&["verify", "3", "1", "2", "1", "0", "--p0-cap", "2"]);
    // λ∞ is still computed directly, so the member stays valid
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["bohman", "4", "1", "--p0-cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bohman_report() {
    let v = json_ok(&["bohman", "3", "1"]);
    assert_eq!(v["result"]["detB_prime"], "247");
    assert_eq!(v["result"]["verdict"], "VALID");
    let out = run(&["bohman", "2", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["reason"], "targets_integral");
}

#[test]
fn scan_csv_has_all_tags() {
    let out = run(&["scan", "--window", "2:7", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# meta: {"));
    assert_eq!(
        lines.next().unwrap(),
        "ratio_num,ratio_den,n,k,b,r,s,a,p,q,bound_root,family_tags,pareto,upper_ref"
    );
    let rows: Vec<&str> = lines.collect();
    for tag in ["purple", "green", "blue", "yellow"] {
        assert!(rows.iter().any(|r| r.split(',').nth(11).unwrap().contains(tag)), "{tag}");
    }
    assert!(rows.contains(&"5,2,2,1,2,1,0,5,5,2,2.236067977499,purple;yellow,true,5/2"));
    assert!(rows.iter().any(|r| r.starts_with("10,3,2,1,2,1,1,")));
}

#[test]
fn scan_is_thread_independent() {
    let body = |threads: &str| {
        let out = run(&["scan", "--window", "2:4", "--n-max", "3", "--k-max", "5", "--threads", threads]);
        let text = String::from_utf8(out.stdout).unwrap();
        text.lines().skip(1).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(body("1"), body("3"));
}

#[test]
fn limit_table() {
    let out = run(&["limit", "--epsilon", "1", "16", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert!(rows[0].starts_with("16,1,2,16,0,4,5,1,0,32,"));
    assert!(rows[1].ends_with(",true"));

    let v = json_ok(&["limit", "--epsilon", "1/2", "1000.5", "--format", "json"]);
    assert_eq!(v["result"]["rows"][0]["params"]["s"], 271);

    let out = run(&["limit", "--epsilon", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_matrix_files_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, "# A\n2\n2 1\n-1 2\n").unwrap();
    std::fs::write(&b, "2\n2 -1\n1 2\n").unwrap();
    let report = dir.path().join("cert.json");
    let out = run(&[
        "verify-matrix",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "5",
        "2",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["result"]["verdict"], "VALID");
    assert_eq!(v["result"]["lambda_inf"], "2");

    let out = run(&["verify-matrix", a.to_str().unwrap(), b.to_str().unwrap(), "5", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["reason"], "lambda_inf");

    std::fs::write(&b, "2\n2 -1\n1\n").unwrap();
    let out = run(&["verify-matrix", a.to_str().unwrap(), b.to_str().unwrap(), "5", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].as_str().unwrap().contains("line 3"));
}
