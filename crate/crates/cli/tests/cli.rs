use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const K3: &str = "Bw";
const C6: &str = "EhEG";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_copyramsey"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn assert_valid(args: &[&str]) {
    let v = json(args);
    assert_eq!(v["valid"], true, "{args:?}: {v}");
}

#[test]
fn families_of_c6() {
    let out = ok(&["families", "--graph", C6, "--kind", "d"]);
    let mut lines: Vec<&str> = out.lines().collect();
    lines.sort_unstable();
    // 3K_1 and 2K_2.
    assert_eq!(lines, vec!["B?", "CK"]);
    let comps = ok(&["families", "--graph", C6, "--kind", "components"]);
    assert_eq!(comps.lines().count(), 1);
}

#[test]
fn bes_lower_has_no_packing() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("out.col");
    let report = json(&["construct", "bes-lower", "--h", K3, "--n", "2", "-o", p(&col)]);
    assert_eq!(report["order"], 9 - 1);
    for colour in ["red", "blue"] {
        let out = ok(&["detect", "pack", "--colouring", p(&col), "--pattern", K3, "--colour", colour, "--n", "2"]);
        assert_eq!(out.trim(), "NONE");
    }
    assert_valid(&["verify", "avoid", "--colouring", p(&col), "--red", "2xBw", "--blue", "2xBw"]);
}

#[test]
fn solve_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.col");
    let v = json(&["solve", "--red", "1xBw", "--blue", "1xBw", "--witness", p(&w)]);
    assert_eq!(v["value"], 6);
    assert_eq!(v["exact"], true);
    assert_eq!(v["witness"]["order"], 5);
    assert_eq!(v["witness"]["red"].as_array().unwrap().len(), 5);
    assert_valid(&["verify", "avoid", "--colouring", p(&w), "--red", "1xBw", "--blue", "1xBw"]);
}

#[test]
fn solve_range_and_bracket() {
    let v = json(&["solve", "--red", "2xBw", "--blue", "1xBw", "--n-range", "7..8"]);
    let answers: Vec<bool> = v["answers"].as_array().unwrap().iter().map(|a| a["arrows"].as_bool().unwrap()).collect();
    assert_eq!(answers, vec![false, true]);
    let b = json(&["solve", "--red", "1xBw", "--blue", "1xBw", "--cap", "4"]);
    assert_eq!((b["exact"].as_bool(), b["lower"].as_u64()), (Some(false), Some(5)));
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", "--red", "2xBw", "--blue", "1xBw"];
    assert_eq!(ok(&args), ok(&args));
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k12.txt");
    let mut text = String::from("12\n");
    for u in 0..12 {
        for v in u + 1..12 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    std::fs::write(&g, text).unwrap();
    let tile = ["tile", "--graph", p(&g), "--k", "3", "--seed", "9"];
    assert_eq!(ok(&tile), ok(&tile));
}

#[test]
fn emitted_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name);
    let col = d("est.col");
    json(&["construct", "estimate-lower", "--h", K3, "--n", "2", "-o", p(&col)]);
    assert_valid(&["verify", "critical", "--colouring", p(&col), "--pattern", K3]);

    let cases: [(&str, Vec<&str>); 4] = [
        ("copy", vec!["--pattern", K3, "--colour", "red"]),
        ("pack", vec!["--pattern", K3, "--colour", "blue", "--n", "1"]),
        ("tie", vec!["--pattern", K3]),
        ("join", vec!["--red-cand", "0,1,2", "--blue-cand", "3,4,5", "--k", "1", "--l", "1"]),
    ];
    for (kind, extra) in cases {
        let mut args = vec!["detect", kind, "--colouring", p(&col)];
        args.extend(extra);
        let out = ok(&args);
        assert_ne!(out.trim(), "NONE", "{kind}");
        let cert = d(&format!("{kind}.json"));
        std::fs::write(&cert, out).unwrap();
        assert_valid(&["verify", kind, "--colouring", p(&col), "--certificate", p(&cert)]);
    }

    let g = d("k15.g6");
    // K_15 in graph6.
    std::fs::write(&g, "N~~~~~~~~~~~~~~~~~w\n").unwrap();
    let cert = d("tiling.json");
    ok(&["tile", "--graph", p(&g), "--k", "3", "--seed", "1", "-o", p(&cert)]);
    assert_valid(&["verify", "tiling", "--graph", p(&g), "--certificate", p(&cert)]);
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("out.col");
    json(&["construct", "bes-lower", "--h", K3, "--n", "2", "-o", p(&col)]);
    let cert = dir.path().join("copy.json");
    std::fs::write(&cert, r#"{"pattern":"Bw","colour":"blue","vertices":[0,1,2]}"#).unwrap();
    let v = json(&["verify", "copy", "--colouring", p(&col), "--certificate", p(&cert)]);
    assert_eq!(v["valid"], false);
}

#[test]
fn bad_input_fails() {
    assert!(!run(&["families", "--graph", "not graph6!", "--kind", "d"]).status.success());
    assert!(!run(&["solve", "--red", "0xBw", "--blue", "Bw"]).status.success());
    assert!(!run(&["solve", "--red", "Bw", "--blue", "Bw", "--n-range", "5..2"]).status.success());
}
