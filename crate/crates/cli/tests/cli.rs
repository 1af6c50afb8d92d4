use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn matchbox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchbox")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matchbox-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enumerate_small_planar_trees() {
    let o = matchbox(&["enumerate", "--kind", "pbt", "-n", "2", "-D", "a", "-O", "r,g"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "B(a,e,|,g,B(a,e,|,e,|))\nB(a,e,|,r,B(a,e,|,e,|))\nB(a,g,B(a,e,|,e,|),e,|)\nB(a,r,B(a,e,|,e,|),e,|)\ncount: 4\n"
    );
    assert_eq!(stdout(&matchbox(&["enumerate", "--kind", "pbt", "-n", "0"])), "|\ncount: 1\n");
    let o = matchbox(&["enumerate", "-n", "3", "-O", "r,g", "--json"]);
    assert_eq!(json(&o)["count"], 20);
}

#[test]
fn enumerate_cap() {
    let o = matchbox(&["enumerate", "-n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    assert!(matchbox(&["enumerate", "-n", "9", "--cap", "9", "--kind", "rooted", "-O", "t"]).status.success());
}

#[test]
fn worked_products() {
    let o = matchbox(&["mul", "dend", "--op", "prec", "-w", "α", "-D", "a,b", "B(a,e,|,e,|)", "B(b,e,|,e,|)"]);
    assert_eq!(stdout(&o).trim(), "B(a,e,|,α,B(b,e,|,e,|))");
    let o = matchbox(&["mul", "dend", "--op", "succ", "-w", "β", "-D", "a,b", "B(a,e,|,e,|)", "B(b,e,|,e,|)"]);
    assert_eq!(stdout(&o).trim(), "B(b,β,B(a,e,|,e,|),e,|)");
    let o = matchbox(&["mul", "prelie", "-t", "red", "-D", "a,b,c", "-O", "green,red", "R(a;[red:R(b)])", "R(c)"]);
    assert_eq!(stdout(&o).trim(), "R(a;[red:R(b;[]),red:R(c;[])]) + R(a;[red:R(b;[red:R(c;[])])])");
}

#[test]
fn mul_rejects_foreign_letters() {
    let o = matchbox(&["mul", "dend", "--op", "prec", "-w", "γ", "B(a,e,|,e,|)", "B(a,e,|,e,|)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let o = matchbox(&["check", "--from", "free-dd", "--axioms", "matching-dendriform"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], "pass");
    assert_eq!(json(&o)["result"]["mode"], "exhaustive");

    let o = matchbox(&["check", "--from", "free-dd", "--steps", "assoc", "--axioms", "matching-associative"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["result"]["verdict"], "fail");
    assert_eq!(r["result"]["witness"]["identity"], "massoc");

    assert_eq!(matchbox(&["check", "--from", "free-dd", "--axioms", "no-such-set"]).status.code(), Some(2));
    assert_eq!(matchbox(&["check", "--from", "nowhere", "--axioms", "matching-rb"]).status.code(), Some(2));
    assert_eq!(
        matchbox(&["check", "--from", "kernel-family", "--axioms", "matching-dendriform"]).status.code(),
        Some(2)
    );
}

#[test]
fn rooted_trees_prelie_and_brackets() {
    assert!(matchbox(&["check", "--from", "rooted-trees", "--axioms", "matching-prelie"]).status.success());
    let o = matchbox(&["check", "--from", "rooted-trees", "--steps", "antisym", "--axioms", "matching-lie"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["witness"]["identity"], "mjacobi");
    let o = matchbox(&["check", "--from", "rooted-trees", "--steps", "antisym", "--axioms", "compatible-lie"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn pipelines() {
    let o = matchbox(&["pipeline", "--from", "kernel-family", "--steps", "dend,prelie,antisym"]);
    assert!(o.status.success());
    let r = json(&o);
    let stages = r["pipeline"]["stages"].as_array().unwrap();
    let sets: Vec<&str> = stages.iter().map(|s| s["axiom_set"].as_str().unwrap()).collect();
    assert_eq!(sets, ["matching-rb", "matching-dendriform", "matching-prelie", "compatible-lie"]);
    assert!(stages.iter().all(|s| s["check"]["verdict"] == "pass"));

    let o = matchbox(&["pipeline", "--from", "running-sum", "--steps", "tridend,postlie"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["pipeline"]["stages"].as_array().unwrap().len(), 3);

    let o = matchbox(&["pipeline", "--from", "running-sum"]);
    assert!(o.status.success());
    let stages = json(&o)["pipeline"]["stages"].clone();
    assert_eq!(stages.as_array().unwrap().len(), 1);
    assert_eq!(stages[0]["step"], "source");

    assert_eq!(matchbox(&["pipeline", "--from", "running-sum", "--steps", "bogus"]).status.code(), Some(2));
    assert_eq!(matchbox(&["pipeline", "--from", "running-sum", "--steps", "prelie"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = |p: &str| {
        vec![
            "pipeline".to_string(),
            "--from".into(),
            "running-sum".into(),
            "--mode".into(),
            "random".into(),
            "--trials".into(),
            "30".into(),
            "--seed".into(),
            "11".into(),
            "--steps".into(),
            "dend,prelie".into(),
            "--report".into(),
            p.into(),
        ]
    };
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    let run = |p: &PathBuf, threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_matchbox"))
            .args(args(p.to_str().unwrap()))
            .env("MATCHBOX_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
    };
    run(&a, "1");
    run(&b, "3");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(r["pipeline"]["stages"][0]["check"]["seed"], 11);
}

#[test]
fn aybe_verify_rejects_non_family() {
    let p = tmp("bad.json");
    std::fs::write(
        &p,
        r#"{"k":2,"lambda":"1","family":{"α":[{"u":["-1","0","0","-1"],"v":["1","0","0","1"]}],"β":[{"u":["1","0","0","0"],"v":["0","1","0","0"]}]}}"#,
    )
    .unwrap();
    let o = matchbox(&["aybe", "verify", "--tensors", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["family"]["verdict"], "fail");
}

#[test]
fn aybe_search_then_verify() {
    let p = tmp("search.json");
    let o = matchbox(&["aybe", "search", "--support", "0,1,0,1;0,0,0,1", "--report", p.to_str().unwrap()]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["grid_points"], "9");
    assert!(r["solutions"].as_array().unwrap().iter().any(|s| s.as_array().unwrap().is_empty()));
    assert!(!r["families"].as_array().unwrap().is_empty());
    let o = matchbox(&["aybe", "verify", "--tensors", p.to_str().unwrap(), "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["rb"]["verdict"], "pass");
}
