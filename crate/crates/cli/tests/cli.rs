use std::fs;
use std::path::Path;
use std::process::Command;

use nqv_cli::docs::{RepDocument, ThetaDocument};
use nqv_cli::run;
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn nqv(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("nqv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn ok(args: &[&str]) -> String {
    let o = nqv(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn craw_wye_entries() {
    let doc: ThetaDocument =
        serde_json::from_str(&ok(&["theta", "craw-wye", "--type", "A2", "-n", "3", "--J", "0,1"])).unwrap();
    let entries: Vec<&str> = doc.entries.values().map(String::as_str).collect();
    assert_eq!(entries, ["-7", "9", "1"]);
    assert_eq!(doc.n, 3);
}

#[test]
fn zero_theta_lies_in_f() {
    let dir = TempDir::new().unwrap();
    let theta = write(&dir, "t.json", r#"{"type":"A2","n":1,"entries":{"0":"0","1":"0","2":"0"}}"#);
    assert_eq!(ok(&["cone", "check", "--theta", &theta, "--cone", "F"]), "true\n");
    assert_eq!(ok(&["cone", "check", "--theta", &theta, "--cone", "C", "--K", "1"]), "false\n");
    assert_eq!(ok(&["cone", "check", "--theta", &theta, "--cone", "sigma", "--K", "1,2", "--closed"]), "true\n");
}

#[test]
fn craw_wye_output_feeds_cone_check() {
    let dir = TempDir::new().unwrap();
    let theta = write(&dir, "t.json", &ok(&["theta", "craw-wye", "--type", "A3", "-n", "2", "--J", "0,2"]));
    assert_eq!(ok(&["cone", "check", "--theta", &theta, "--cone", "C", "--K", "1,3"]), "true\n");
    assert_eq!(ok(&["cone", "check", "--theta", &theta, "--cone", "C", "--K", "2"]), "false\n");
    let walls = ok(&["walls", "build", "--type", "A3", "-n", "2", "--theta", &theta]);
    let sign = walls.lines().last().unwrap().strip_prefix("sign ").unwrap();
    assert!(!sign.contains('0'));
}

#[test]
fn arrangement_counts() {
    for (t, n, count) in [("A1", "1", 2), ("A1", "2", 4), ("A2", "3", 16)] {
        let text = ok(&["walls", "build", "--type", t, "-n", n]);
        assert!(text.starts_with(&format!("{count} hyperplanes")), "{text}");
        assert_eq!(text.lines().count(), count + 1);
    }
}

#[test]
fn slice_has_four_labeled_chambers_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let run_slice = |p: &Path| ok(&["walls", "slice", "--type", "A2", "-n", "3", "--out", p.to_str().unwrap()]);
    let table = run_slice(&a);
    assert_eq!(table, run_slice(&b));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let svg = fs::read_to_string(&a).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    let chambers: Vec<&str> = table
        .lines()
        .filter(|l| l.starts_with('c') && l.split('\t').nth(2).is_some_and(|x| x.starts_with("C_")))
        .collect();
    assert_eq!(chambers.len(), 4, "{table}");
}

#[test]
fn slice_rejects_a_plane_inside_a_wall() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.svg");
    let o = nqv(&[
        "walls",
        "slice",
        "--type",
        "A2",
        "-n",
        "1",
        "--plane",
        "0,0,0;1,-1,0;0,1,-1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("DegeneratePlane"), "{}", o.stderr);
}

#[test]
fn documents_round_trip() {
    let text = ok(&["rep", "orbit-sum", "--type", "A2", "-n", "2", "--points", "1:1,1:2", "--field", "F3"]);
    let doc: RepDocument = serde_json::from_str(&text).unwrap();
    let rep = doc.to_rep().unwrap();
    assert_eq!(RepDocument::from_rep(&rep, doc.n), doc);
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);

    let theta: ThetaDocument =
        serde_json::from_str(&ok(&["theta", "craw-wye", "--type", "D4", "-n", "2", "--J", "0,2"])).unwrap();
    let (_, parsed) = theta.to_theta().unwrap();
    assert_eq!(ThetaDocument::from_theta(&parsed, theta.n), theta);

    let q = ok(&["rep", "orbit-sum", "--type", "A1", "-n", "1", "--points", "1/2:3"]);
    let doc: RepDocument = serde_json::from_str(&q).unwrap();
    assert_eq!(doc.field, "Q");
    assert_eq!(RepDocument::from_rep(&doc.to_rep().unwrap(), doc.n), doc);
}

#[test]
fn stability_of_orbit_sums() {
    let dir = TempDir::new().unwrap();
    let rep = write(
        &dir,
        "r.json",
        &ok(&["rep", "orbit-sum", "--type", "A1", "-n", "1", "--points", "1:1", "--field", "F3"]),
    );
    let theta = write(&dir, "t.json", &ok(&["theta", "craw-wye", "--type", "A1", "-n", "1", "--J", "0"]));
    let report = json(&ok(&["stab", "report", "--rep", &rep, "--theta", &theta]));
    assert_eq!(report["stable"], Value::Bool(true));
    assert_eq!(report["framing_cyclic"], Value::Bool(true));
    assert!(report["caveat"].as_str().unwrap().contains("F_3"));

    // break the framing: b = 0
    let mut doc: RepDocument = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    doc.matrices.insert("b".into(), vec![vec!["0".into()]]);
    let broken = write(&dir, "b.json", &serde_json::to_string(&doc).unwrap());
    let report = json(&ok(&["stab", "report", "--rep", &broken, "--theta", &theta]));
    assert_eq!(report["stable"], Value::Bool(false));
    assert_eq!(report["witness"]["dims"]["inf"], 1);
    assert!(report["witness_pairing"].as_str().unwrap().starts_with('-'));

    let hn = json(&ok(&["stab", "hn", "--rep", &broken, "--theta", &theta]));
    let layers = hn["layers"].as_array().unwrap();
    assert_eq!(layers.len(), 2);
    assert_eq!(layers[0]["dims"]["inf"], 1);
}

#[test]
fn tangent_and_relations() {
    let dir = TempDir::new().unwrap();
    let rep = write(&dir, "r.json", &ok(&["rep", "orbit-sum", "--type", "A2", "-n", "2", "--points", "1:1,1:2"]));
    assert_eq!(ok(&["stab", "tangent", "--rep", &rep]), "4\n");
    let check = ok(&["rep", "check", "--rep", &rep]);
    assert!(check.contains("module: true") && check.contains("trace identity: true"));

    let bad = write(
        &dir,
        "bad.json",
        r#"{"type":"A1","field":"Q","dims":{"inf":1,"0":1,"1":0},"matrices":{"b":[["1"]],"b*":[["1"]]}}"#,
    );
    let check = ok(&["rep", "check", "--rep", &bad]);
    assert!(check.contains("module: false") && check.contains("trace identity: true"), "{check}");
    let o = nqv(&["stab", "tangent", "--rep", &bad]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("NotAModule"));
}

#[test]
fn mckay_and_rootsys() {
    let text = ok(&["mckay", "verify", "2T", "E6"]);
    assert!(text.contains("order 24") && text.contains("adjacency true"));
    let o = nqv(&["mckay", "verify", "cyclic:5", "D4"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("NoIsomorphism"));
    let show = ok(&["rootsys", "show", "D4"]);
    assert!(show.contains("delta 1 1 2 1 1") && show.contains("positive roots 12"));
}

#[test]
fn domain_errors_exit_one_with_name() {
    let cases: [(&[&str], &str); 4] = [
        (&["theta", "craw-wye", "--type", "A2", "-n", "1", "--J", "1"], "BadSubset"),
        (&["rootsys", "show", "E9"], "InvalidRank"),
        (&["rep", "orbit-sum", "--type", "D4", "-n", "1", "--points", "1:1"], "UnsupportedType"),
        (&["rep", "orbit-sum", "--type", "A1", "-n", "2", "--points", "1:1,-1:-1"], "DuplicateOrbit"),
    ];
    for (args, name) in cases {
        let o = nqv(args);
        assert_eq!(o.code, 1, "{args:?}");
        assert!(o.stderr.starts_with(&format!("error: {name}:")), "{args:?}: {}", o.stderr);
    }
}

#[test]
fn malformed_documents() {
    let dir = TempDir::new().unwrap();
    let theta = write(&dir, "t.json", r#"{"type":"A2","n":1,"entries":{"0":"1","1":"x","2":"0"}}"#);
    let o = nqv(&["cone", "check", "--theta", &theta, "--cone", "F"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("Parse"));
    let rep = write(&dir, "r.json", r#"{"type":"A1","field":"Q","dims":{"inf":1,"0":1},"matrices":{"b":[["1","2"]]}}"#);
    assert!(nqv(&["rep", "check", "--rep", &rep]).stderr.contains("ShapeMismatch"));
    let rep = write(&dir, "r2.json", r#"{"type":"A1","field":"Q","dims":{"inf":1},"matrices":{"zz":[]}}"#);
    assert!(nqv(&["rep", "check", "--rep", &rep]).stderr.contains("IndexMismatch"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nqv");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["theta", "craw-wye", "--type", "A2", "-n", "3", "--J", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = status(&["walls", "frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = status(&["rootsys", "show", "B2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: Parse:"));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
