use std::io::Write;
use std::process::{Command, Output, Stdio};

use ruled_locus::doc::{curve_to_json, to_canonical_string};
use ruled_locus::forms::tangent_line;
use ruled_locus::{Field, P1Point, PlaneCurve};
use serde_json::Value;

const WORKED: &str = r#"{"d":3,"field":{"type":"Q"},"omega":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","1","0"],["0","0","0","1"],["0","0","0","0"]]}"#;
const POINT_CONE: &str =
    r#"{"d":2,"omega":[["1","0","0"],["0","1","0"],["0","0","1"],["0","0","0"],["0","0","0"],["0","0","0"]]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ruled-locus"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad stdout {:?}: {e}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn gen_then_analyze() {
    let g = run(&["gen", "--kind", "type-a", "--d", "3", "--a", "1", "--seed", "7"], "");
    assert!(g.status.success());
    let a = run(&["analyze"], std::str::from_utf8(&g.stdout).unwrap());
    assert_eq!(a.status.code(), Some(0));
    let r = stdout_json(&a);
    assert_eq!(r["validity"]["in_R_d"], true);
    assert_eq!(r["splitting_type"]["a_Q"], 1);
}

#[test]
fn generated_documents_are_canonical() {
    for kind in ["type-a", "cone", "rank5", "rank3", "developable", "boundary"] {
        let g = run(&["gen", "--kind", kind, "--d", "6", "--seed", "3", "--field", "fp:10007"], "");
        assert!(g.status.success(), "{kind}: {}", String::from_utf8_lossy(&g.stderr));
        let text = String::from_utf8(g.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_canonical_string(&v), text.trim_end());
        let dd = run(&["dual"], &String::from_utf8(run(&["dual"], &text).stdout).unwrap());
        assert_eq!(String::from_utf8(dd.stdout).unwrap(), text);
    }
}

#[test]
fn worked_example_both_methods() {
    let o = run(&["psi", "-", "--method", "both"], WORKED);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["biform"]["coeffs"], serde_json::json!(["0", "0", "1"]));
    assert_eq!(v["det"], v["biform"]);
    assert_eq!(v["proportional"], true);
    let phi = stdout_json(&run(&["phi"], WORKED));
    assert_eq!(phi["rank"], 3);
    assert_eq!(phi["matrix"]["rows"][1][3], "-1");
    assert_eq!(phi["matrix"]["rows"][2][2], "2");
}

#[test]
fn degrees_table() {
    let v = stdout_json(&run(&["degrees", "--d", "6"], ""));
    assert_eq!(v["i"], 7);
    let v = stdout_json(&run(&["degrees", "--d", "5"], ""));
    assert_eq!((v["l"].clone(), v["m"][1].clone(), v["boundary"]["4"].clone()), (5.into(), 30.into(), 12.into()));
}

#[test]
fn invalid_input_exits_1() {
    for doc in ["not json", r#"{"d":2,"omega":[]}"#, r#"{"d":1,"field":{"type":"Fp","p":9},"omega":[]}"#] {
        let o = run(&["analyze"], doc);
        assert_eq!(o.status.code(), Some(1), "{doc}");
        let err: Value = serde_json::from_slice(&o.stderr).unwrap();
        assert!(err["error"].is_string());
    }
}

#[test]
fn cone_input_exits_2() {
    let o = run(&["psi"], POINT_CONE);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["analyze"], POINT_CONE);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout_json(&o)["stability"]["class"], "Unstable");
}

#[test]
fn batch_preserves_order() {
    let docs: Vec<String> = (3..9)
        .map(|d| {
            let g = run(&["gen", "--kind", "type-a", "--d", &d.to_string(), "--seed", "1", "--field", "fp:10007"], "");
            String::from_utf8(g.stdout).unwrap().trim().to_string()
        })
        .collect();
    let input = docs.join("\n") + "\n";
    let o = run_env(&["analyze", "--batch"], &input, &[("RULED_LOCUS_THREADS", "3")]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> =
        String::from_utf8(o.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let degrees: Vec<u64> = lines.iter().map(|v| v["d"].as_u64().unwrap()).collect();
    assert_eq!(degrees, vec![3, 4, 5, 6, 7, 8]);
    let o = run(&["analyze", "--batch"], &format!("{}\nnot json\n", docs[0]));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
}

#[test]
fn actions() {
    let dir = std::env::temp_dir().join(format!("ruled-locus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let h = dir.join("h.json");
    std::fs::write(&h, r#"[["0","1"],["1","0"]]"#).unwrap();
    let o = run(&["act", "-", "--pgl2", h.to_str().unwrap()], WORKED);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["omega"][0], serde_json::json!(["0", "0", "0", "1"]));
    let g = dir.join("g.json");
    std::fs::write(&g, r#"{"rows":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","5"]]}"#)
        .unwrap();
    let o = run(&["act", "-", "--pgl4", g.to_str().unwrap()], WORKED);
    assert!(o.status.success());
    let psi = stdout_json(&run(&["psi"], &String::from_utf8(o.stdout).unwrap()));
    assert_eq!(psi["coeffs"], serde_json::json!(["0", "0", "1"]));
    std::fs::write(&g, r#"[["1","0"],["0","1"]]"#).unwrap();
    assert_eq!(run(&["act", "-", "--pgl4", g.to_str().unwrap()], WORKED).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn triangles_of_tangent_lines() {
    let f = Field::Rational;
    let pts = [(0, 1), (1, 0), (1, 1)].map(|(s, t)| P1Point::ints(f, s, t).unwrap());
    let x = pts.iter().fold(PlaneCurve::constant(f.one()), |acc, p| acc.mul(&tangent_line(p)));
    let doc = to_canonical_string(&curve_to_json(&x));
    let o = run(&["triangles", "-", "--mode", "brute:31"], &doc);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert!(v["count"].as_u64().unwrap() >= 1);
    let o = run(&["triangles", "-", "--mode", "exact"], &doc);
    assert!(o.status.code() == Some(0) || o.status.code() == Some(2));
    assert_eq!(run(&["triangles", "-", "--mode", "brute:1000"], &doc).status.code(), Some(1));
}

#[test]
fn quintic_triangles_exact() {
    let g = run(&["gen", "--kind", "type-a", "--d", "5", "--a", "2", "--seed", "4", "--field", "fp:10007"], "");
    let curve = run(&["psi"], std::str::from_utf8(&g.stdout).unwrap());
    let o = run(&["triangles"], std::str::from_utf8(&curve.stdout).unwrap());
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["result"], serde_json::json!({ "kind": "finite", "count": 2 }));
}

#[test]
fn from_extension() {
    let doc = r#"{"a":[[["1","2","-1"],["0","3","1"]],[["2","0","1"],["1","-1","4"]]],"field":{"type":"Q"}}"#;
    let o = run(&["from-extension"], doc);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["equal"], true);
    assert_eq!(v["curve"], v["psi"]);
    assert_eq!(v["surface"]["d"], 4);
    let degenerate = r#"{"a":[[["1","0","0"],["0","0","0"]],[["0","0","0"],["1","0","0"]]]}"#;
    assert_eq!(run(&["from-extension"], degenerate).status.code(), Some(2));
}

#[test]
fn selftest_single_criterion() {
    let o = run(&["selftest", "--criterion", "3"], "");
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("[PASS]"));
    assert_eq!(run(&["selftest", "--criterion", "13"], "").status.code(), Some(1));
}
