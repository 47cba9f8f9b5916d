use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn scrollar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scrollar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = scrollar(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: stdout {:?} stderr {:?}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scrollar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn lingen_report() {
    let (code, v) = json_of(&["lingen", "--d", "4", "--trials", "60", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"d": 4, "rank": 12, "full": true}));
}

#[test]
fn plane_model_file() {
    let path = temp_file("elliptic.txt", "y^2 - (x^3 - x)\n");
    let (code, v) = json_of(&["--model", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], json!([2]));
    assert_eq!(v["genus"], json!(1));
    assert_eq!(v["branch_degree"], json!(4));
}

#[test]
fn fiber_points_listed() {
    let path = temp_file("cubic.txt", "y^3 - x*y - 1");
    // at x = 0 the fiber is y^3 = 1, with the single rational point y = 1
    let (code, v) = json_of(&["--model", path.to_str().unwrap(), "--fiber-at", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["fiber"]["sheets"], json!([["1", "1", "1"]]));
    assert_eq!(v["fiber"]["etale"], json!(true));
}

#[test]
fn syntax_error_exits_2() {
    let path = temp_file("truncated.txt", "y^2 -");
    let out = scrollar(&["--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 5"));
}

#[test]
fn singular_bundle_diagnosed() {
    let path = temp_file(
        "singular.json",
        r#"{"rank": 2, "finite": [["1", "x"], ["1", "x"]], "infinity": [["1", "0"], ["0", "1"]]}"#,
    );
    let out = scrollar(&["--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("finite chart basis singular"));
}

#[test]
fn pinched_cover_reads_back() {
    let (code, v) = json_of(&["pinch", "--degrees", "2,3,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], json!([1, 2, 3]));
    let path = temp_file("tower.json", &v["cover"].to_string());
    let (code, w) = json_of(&["--model", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["type"], json!([1, 2, 3]));
    assert_eq!(w["provenance"], json!("pinched"));
}

#[test]
fn pinch_in_prime_characteristic() {
    let (code, v) = json_of(&["--char", "10007", "pinch", "--degrees", "4,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["cover"]["char"], json!(10007));
    assert_eq!(v["type"], json!([4, 4]));
}

#[test]
fn kummer_closed_form() {
    let (code, v) = json_of(&["kummer", "--d", "3", "--p", "x^4+x+1"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], json!([2, 3]));
    assert_eq!(v["branch_degree"], v["riemann_hurwitz_branch_degree"]);
}

#[test]
fn inflation_matches_prediction() {
    let path = temp_file(
        "bundle.json",
        r#"{"rank": 2, "finite": [["1", "0"], ["0", "1"]], "infinity": [["x^2", "0"], ["0", "x^-4"]]}"#,
    );
    let (code, v) = json_of(&[
        "inflate",
        "--bundle",
        path.to_str().unwrap(),
        "--point",
        "-1",
        "--vectors",
        "0,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["before"]["type"], json!([-4, 2]));
    assert_eq!(v["after"]["type"], json!([-3, 2]));
    assert_eq!(v["predicted"]["h1"], v["after"]["h1"]);
    assert_eq!(v["predicted"]["rank_qv"], json!(1));
}

#[test]
fn miranda_realizability() {
    let (code, v) = json_of(&["miranda", "--a1", "2", "--a2", "4", "--construct"]);
    assert_eq!(code, 0);
    assert_eq!(v["realizable"], json!(true));
    assert_eq!(v["type"], json!([2, 4]));
    let (code, v) = json_of(&[
        "miranda",
        "--a1",
        "2",
        "--a2",
        "5",
        "--construct",
        "--attempts",
        "10",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["realizable"], json!(false));
    assert_eq!(v["diagnostic"]["not_smooth"], json!(10));
    assert_eq!(
        scrollar(&["miranda", "--a1", "3", "--a2", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dimension_counts() {
    let (code, v) = json_of(&["dims", "--d", "3", "--g", "7", "--gy", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["hurwitz_dim"], json!(6));
    assert_eq!(v["b"], json!(3));
    let (code, v) = json_of(&[
        "maroni", "--type", "2,4", "--d", "3", "--g", "4", "--gy", "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["codim"], json!(1));
    assert_eq!(
        v["maroni_dim"].as_i64(),
        Some(v["hilb_dim"].as_i64().unwrap() - v["affine_group_dim"].as_i64().unwrap())
    );
    let (code, v) = json_of(&["filtration", "--rank", "3", "--degree", "5", "--gap", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["degrees"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .sum::<i64>(),
        5
    );
}

#[test]
fn rnc_report() {
    let (code, v) = json_of(&["rnc", "--a", "0,1,-1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["coordinate_points_hit"], json!(true));
    assert_eq!(v["components"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_suites() {
    let (code, v) = json_of(&["verify", "dims"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], json!(true));
    let out = scrollar(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "--char", "10007", "--seed", "5", "verify", "lingen", "--json",
    ];
    let a = scrollar(&args);
    let b = scrollar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(scrollar(&[]).status.code(), Some(2));
    assert_eq!(scrollar(&["pinch"]).status.code(), Some(2));
    assert_eq!(
        scrollar(&["--char", "4", "dims", "--d", "3", "--g", "1", "--gy", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        scrollar(&["--char", "7", "kummer", "--d", "3", "--p", "x^4/7 + 1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn text_renders_the_json() {
    let out = scrollar(&["kummer", "--d", "3", "--p", "x^4+x+1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "type: [2, 3]"));
    assert!(text.lines().any(|l| l == "genus: 3"));
}
