use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, v: &Value) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p
    }

    fn raw(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convexlat"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn case_iv_spec() -> Value {
    json!({
        "case": "iv", "c": 3, "d": 4,
        "phi": {
            "matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]],
            "offset": ["0", "0", "0", "1"]
        },
        "o": ["0", "0", "0", "0"],
        "gamma": "1/2"
    })
}

#[test]
fn hom_verify_is_byte_stable() {
    let dir = Dir::new();
    let spec = dir.file("spec.json", &case_iv_spec());
    let a = run(&["hom-verify", s(&spec), "--trials", "20", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(stdout_json(&a)["all_ok"], json!(true));
    let b = run(&["hom-verify", s(&spec), "--trials", "20", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn broken_map_is_refuted() {
    // gamma outside (0, 1) is rejected before any trial runs
    let dir = Dir::new();
    let mut bad = case_iv_spec();
    bad["gamma"] = json!("2/1");
    let spec = dir.file("spec.json", &bad);
    assert_eq!(run(&["hom-verify", s(&spec)]).status.code(), Some(2));
}

#[test]
fn disjoint_bands_are_infeasible() {
    let dir = Dir::new();
    let fam = dir.file(
        "rays.json",
        &json!({
            "mode": "rays", "dim": 2, "o": ["0", "0"],
            "segments": [{"u": ["1", "0"], "s": ["1", "2"]}, {"u": ["1", "0"], "s": ["3", "4"]}]
        }),
    );
    let o = run(&["transversal", s(&fam)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o), json!({"feasible": false, "minimal_infeasible": [0, 1]}));
}

#[test]
fn feasible_family_gives_a_certificate() {
    let dir = Dir::new();
    let fam = dir.file(
        "rays.json",
        &json!({
            "mode": "rays", "dim": 2, "o": ["1", "1"],
            "segments": [{"u": ["1", "0"], "s": ["1", "2"]}, {"u": ["0", "1"], "s": ["1", "2"]}]
        }),
    );
    let o = run(&["transversal", s(&fam)]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["feasible"], json!(true));
    assert_eq!(v["certificate"]["hits"].as_array().unwrap().len(), 2);
}

#[test]
fn fenchel_round_trip() {
    let dir = Dir::new();
    let f = json!({
        "kind": "trunc_epi", "kappa": "1/1",
        "body": {"dim": 2, "vertices": [["-1", "1"], ["0", "0"], ["1", "1"]]}
    });
    let fp = dir.file("f.json", &f);
    let g = run(&["fenchel", s(&fp)]);
    assert_eq!(g.status.code(), Some(0));
    let gp = dir.raw("g.json", std::str::from_utf8(&g.stdout).unwrap());
    let back = run(&["fenchel-inv", s(&gp), "--kappa", "1"]);
    assert_eq!(back.status.code(), Some(0));
    let canon = run(&["fenchel-inv", s(&gp)]);
    assert_eq!(back.stdout, canon.stdout);
    let v = stdout_json(&back);
    assert_eq!(v["kind"], json!("trunc_epi"));
    assert_eq!(
        v["body"]["vertices"],
        json!([["-1/1", "1/1"], ["0/1", "0/1"], ["1/1", "1/1"]])
    );
}

#[test]
fn malformed_json_reports_a_position() {
    let dir = Dir::new();
    let p = dir.raw("bad.json", "{\"dim\": 2,\n \"vertices\": [[\"0\", \"0\"],]\n}");
    let o = run(&["hull", s(&p)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_files_are_input_errors() {
    assert_eq!(run(&["dim", "/nonexistent/body.json"]).status.code(), Some(2));
}

#[test]
fn hull_meet_join_dim() {
    let dir = Dir::new();
    let sq = dir.file(
        "sq.json",
        &json!({"dim": 2, "vertices": [["0", "0"], ["2", "0"], ["0", "2"], ["2", "2"], ["1", "1"]]}),
    );
    let tri = dir.file("tri.json", &json!({"dim": 2, "vertices": [["1", "1"], ["3", "1"], ["1", "3"]]}));
    let h = stdout_json(&run(&["hull", s(&sq)]));
    assert_eq!(h["vertices"].as_array().unwrap().len(), 4);
    let m = stdout_json(&run(&["meet", s(&sq), s(&tri)]));
    // (2, 2) lies on the triangle's long edge
    assert_eq!(
        m["vertices"],
        json!([["1/1", "1/1"], ["1/1", "2/1"], ["2/1", "1/1"], ["2/1", "2/1"]])
    );
    let j = stdout_json(&run(&["join", s(&sq), s(&tri)]));
    assert_eq!(j["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(stdout_json(&run(&["dim", s(&tri)])), json!({"dim": 2}));
    let empty = dir.file("e.json", &json!({"dim": 2, "vertices": []}));
    assert_eq!(stdout_json(&run(&["dim", s(&empty)])), json!({"dim": -1}));
}

#[test]
fn radon_on_a_square() {
    let dir = Dir::new();
    let p = dir.file("pts.json", &json!({"points": [["0", "0"], ["1", "1"], ["1", "0"], ["0", "1"]]}));
    let o = run(&["radon", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["witness"], json!(["1/2", "1/2"]));
}

#[test]
fn classify_a_sampled_map() {
    let dir = Dir::new();
    let spec = dir.file("spec.json", &case_iv_spec());
    let xs = [["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["1", "1", "1"]];
    let mut points = Vec::new();
    for x in xs {
        let xp = dir.file("x.json", &json!(x));
        let img = stdout_json(&run(&["hom-apply-point", s(&spec), s(&xp)]));
        points.push(json!({"x": x, "image": img}));
    }
    let sample = dir.file(
        "sample.json",
        &json!({"c": 3, "d": 4, "empty_image": {"dim": 4, "vertices": []}, "points": points}),
    );
    let o = run(&["hom-classify", s(&sample)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["case"], json!("iv"));
    assert_eq!(v["gamma"], json!("1/2"));
    assert_eq!(v["residual_ok"], json!(true));
    assert_eq!(v["o"], json!(["0/1", "0/1", "0/1", "0/1"]));
}

#[test]
fn function_lattice_ops() {
    let dir = Dir::new();
    let f = dir.file("f.json", &json!({"kind": "trunc_epi", "body": {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}}));
    let g = dir.file("g.json", &json!({"kind": "trunc_epi", "body": {"dim": 2, "vertices": [["2", "0"], ["3", "0"], ["2", "1"], ["3", "1"]]}}));
    let m = stdout_json(&run(&["func-lattice", "--op", "meet-plus", s(&f), s(&g)]));
    assert_eq!(m["kind"], json!("plus_inf"));
    let j = run(&["func-lattice", "--op", "join-plus", s(&f), s(&g)]);
    assert_eq!(j.status.code(), Some(0));
    let mixed = run(&["func-lattice", "--op", "meet-minus", s(&f), s(&g)]);
    assert_eq!(mixed.status.code(), Some(2));
    let x = dir.file("x.json", &json!(["3/2"]));
    let jp = dir.raw("j.json", std::str::from_utf8(&j.stdout).unwrap());
    assert_eq!(stdout_json(&run(&["func-eval", s(&jp), s(&x)])), json!({"value": "0/1"}));
}

#[test]
fn pole_and_band() {
    let dir = Dir::new();
    // H through (-1, 0) and (0, 1), frame centered at (1, 0)
    let p = dir.file("p.json", &json!({"o": ["1", "0"], "normal": ["-1", "1"], "offset": "1"}));
    assert_eq!(stdout_json(&run(&["pole", s(&p)])), json!({"pole": ["-1/2", "1/2"]}));
    let through = dir.file("t.json", &json!({"o": ["1", "0"], "normal": ["1", "0"], "offset": "1"}));
    assert_eq!(run(&["pole", s(&through)]).status.code(), Some(2));
    let b = dir.file("b.json", &json!({"u": ["1", "2"], "s": ["1/2", "2"]}));
    assert_eq!(
        stdout_json(&run(&["band", s(&b)])),
        json!({"normal": ["1/1", "2/1"], "lo": "1/2", "hi": "2/1"})
    );
}

#[test]
fn function_maps_verify() {
    let dir = Dir::new();
    let phi = dir.file("phi.json", &json!({"matrix": [["2", "1"], ["0", "1"]], "offset": ["1", "0"]}));
    for verb in ["hom-fn-verify", "anti-hom-verify"] {
        let o = run(&[verb, s(&phi), "--trials", "10", "--seed", "3"]);
        assert_eq!(o.status.code(), Some(0), "{verb}");
        assert_eq!(stdout_json(&o)["meet_ok"], json!(true));
    }
    let flat = dir.file("flat.json", &json!({"matrix": [["1"], ["0"]], "offset": ["0", "0"]}));
    assert_eq!(run(&["hom-fn-verify", s(&flat)]).status.code(), Some(2));
}

#[test]
fn dimension_laws_and_support() {
    let dir = Dir::new();
    let spec = dir.file("spec.json", &case_iv_spec());
    let o = run(&["dim-laws", s(&spec), "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["entries"].as_array().unwrap().len(), 10);
    let box_ = dir.file("box.json", &json!({"dim": 1, "vertices": [["-1"], ["2"]]}));
    let h = stdout_json(&run(&["support", s(&box_)]));
    assert_eq!(h["pieces"], json!([{"a": ["-1/1"], "b": "0/1"}, {"a": ["2/1"], "b": "0/1"}]));
    let f = stdout_json(&run(&["indicator", s(&box_), "--kappa", "2"]));
    assert_eq!(f["kappa"], json!("2/1"));
}

#[test]
fn help_lists_every_verb() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    for (verb, _) in convexlat_cli::VERBS {
        assert!(text.contains(verb), "{verb}");
    }
}
