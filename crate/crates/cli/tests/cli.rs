use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_entrocone"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = run(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn star_piped_into_entropy() {
    let star = run(&["star", "--n", "3", "--w", "3"], None);
    assert!(star.status.success());
    let text = String::from_utf8(star.stdout).unwrap();
    let v = ok_json(&["entropy", "-"], Some(&text));
    assert_eq!(strings(&v["entries"]), ["1", "1", "1", "2", "2", "2", "3"]);
    let e = ok_json(
        &["entropy", "-", "--subsystem", "1,2", "--backend", "enum"],
        Some(&text),
    );
    assert_eq!(e["entropy"], "2");
}

#[test]
fn volume_and_table() {
    let v = ok_json(&["volume", "shec", "--n", "10"], None);
    assert_eq!(v["inverse_volume"], "1906410000");
    let v = ok_json(&["volume", "sqec", "--n", "10"], None);
    assert_eq!(v["inverse_volume"], "13608000");
    let t = ok_json(&["table", "--max-n", "10"], None);
    let rows = t.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[1]["inv_shec"], "21");
    assert_eq!(rows[1]["ratio"], "4/7");
    assert_eq!(rows[8]["ratio_3sf"], "0.00714");
    let pretty = run(&["table", "--max-n", "4", "--pretty"], None);
    let text = String::from_utf8(pretty.stdout).unwrap();
    assert!(text.lines().nth(2).unwrap().contains("0.571"));
}

#[test]
fn verify_passes() {
    let out = run(&["verify"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 56);
    assert!(run(&["verify", "--n", "7"], None).status.code() == Some(2));
}

#[test]
fn cones_dual_and_membership() {
    let dir = tempfile::tempdir().unwrap();
    let cone = run(&["cone", "shec", "--n", "5"], None);
    let text = String::from_utf8(cone.stdout).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["rays"][0], serde_json::json!(["5", "8", "9"]));
    assert_eq!(parsed["facets"][2], serde_json::json!(["0", "-9", "8"]));

    let rays_only = run(&["cone", "shec", "--n", "5", "--rays"], None);
    let rays_text = String::from_utf8(rays_only.stdout).unwrap();
    assert!(!rays_text.contains("facets"));
    let rays_path = write(dir.path(), "rays.json", &rays_text);
    let dual = run(&["dual", "--rays", &rays_path], None);
    assert_eq!(String::from_utf8(dual.stdout).unwrap(), text);

    let cone_path = write(dir.path(), "cone.json", &text);
    let inside = write(
        dir.path(),
        "in.json",
        r#"{"parties": 5, "kind": "sym", "entries": ["7", "14", "18"]}"#,
    );
    let m = run(&["member", "--cone", &cone_path, "--vector", &inside], None);
    assert_eq!(m.status.code(), Some(0));
    let outside = write(
        dir.path(),
        "out.json",
        r#"{"parties": 5, "kind": "sym", "entries": ["1", "3", "3"]}"#,
    );
    let m = run(
        &["member", "--cone", &cone_path, "--vector", &outside],
        None,
    );
    assert_eq!(m.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&m.stdout).unwrap();
    assert_eq!(v["member"], false);
}

#[test]
fn cap_and_usage_errors() {
    let out = run(&["cone", "sqec", "--n", "31"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(run(&["cone", "sqec", "--n", "31", "--cap", "40"], None)
        .status
        .success());
    assert_eq!(
        run(&["volume", "shec", "--n", "3", "--bogus"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["entropy", "-"], Some("{not json")).status.code(),
        Some(2)
    );
    let bad_graph = r#"{"parties": 1, "vertices": [{"id": "a", "color": 1}], "edges": []}"#;
    let out = run(&["entropy", "-"], Some(bad_graph));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("color 2 unused"));
}

#[test]
fn symmetrize_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let mmi = write(
        dir.path(),
        "mmi.json",
        r#"{"parties": 3, "kind": "inequality",
            "coeffs": {"1,2": "1", "1,3": "1", "2,3": "1", "1": "-1", "2": "-1", "3": "-1", "1,2,3": "-1"}}"#,
    );
    let s = ok_json(&["symmetrize", "--inequality", &mmi], None);
    assert_eq!(s["kind"], "sym-inequality");
    assert_eq!(s["coeffs"]["1"], "-4");
    assert_eq!(s["coeffs"]["2"], "3");

    let star = run(&["star", "--n", "3", "--w", "3"], None);
    let graph = write(
        dir.path(),
        "star.json",
        &String::from_utf8(star.stdout).unwrap(),
    );
    let c = run(&["check", "--inequality", &mmi, "--graph", &graph], None);
    assert_eq!(c.status.code(), Some(0));

    // a vector that violates MMI: three parties sharing a GHZ-like profile
    let ghz = write(
        dir.path(),
        "ghz.json",
        r#"{"parties": 3, "kind": "entropy", "entries": ["1","1","1","1","1","1","1"]}"#,
    );
    let c = run(&["check", "--inequality", &mmi, "--vector", &ghz], None);
    assert_eq!(c.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["value"], "-1");

    let sv = ok_json(&["symmetrize", "--vector", &ghz], None);
    assert_eq!(strings(&sv["entries"]), ["1", "1"]);
}

#[test]
fn average_and_cross_section() {
    let star = run(&["star", "--n", "2", "--w", "1/2"], None);
    let text = String::from_utf8(star.stdout).unwrap();
    let avg = run(&["average", "-"], Some(&text));
    assert!(avg.status.success());
    let avg_text = String::from_utf8(avg.stdout).unwrap();
    let e = ok_json(&["entropy", "-"], Some(&avg_text));
    let entries = strings(&e["entries"]);
    assert!(entries.iter().all(|x| *x == entries[0]));
    assert_eq!(
        run(&["average", "-", "--max-vertices", "5"], Some(&text))
            .status
            .code(),
        Some(2)
    );

    let cs = ok_json(&["cross-section", "sqec", "--n", "4"], None);
    assert_eq!(
        cs["vertices"],
        serde_json::json!([["1/2", "1/2"], ["1/3", "2/3"]])
    );
}

#[test]
fn emitted_fixtures_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "verify",
            "--n",
            "4",
            "--emit-fixtures",
            dir.path().to_str().unwrap(),
        ],
        None,
    );
    assert!(out.status.success());
    let ray = dir.path().join("hec-ray-n4-01.json");
    let facet = dir.path().join("hec-facets-n4-02.json");
    let c = run(
        &[
            "check",
            "--inequality",
            facet.to_str().unwrap(),
            "--vector",
            ray.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(c.status.code(), Some(0));
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 3 + 2 + 5);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["cone", "shec", "--n", "12"],
        vec!["table", "--max-n", "8"],
        vec!["verify"],
    ] {
        let a = run(&args, None);
        let b = run(&args, None);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
