use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use torsionlab::algebra::{parse_ratfunc, GaussianRational as Q, RatFunc};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsionlab"))
        .args(args)
        .env_remove("TORSIONLAB_CORPUS")
        .output()
        .unwrap()
}

fn run_paths(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsionlab"))
        .args(args)
        .env_remove("TORSIONLAB_CORPUS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("torsionlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn is_signed_unit_multiple(a: &RatFunc, b: &RatFunc) -> bool {
    matches!(a.unit_ratio(b), Some((c, _)) if c == Q::from_int(1) || c == Q::from_int(-1))
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn circle_torsion_is_one_minus_z_up_to_units() {
    let o = run_paths(&[
        &"torsion",
        &corpus("circle.json"),
        &corpus("circle.rep.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let expr = out
        .lines()
        .find_map(|l| l.strip_prefix("torsion: "))
        .unwrap();
    let t = parse_ratfunc(expr, None).unwrap().0;
    assert!(
        is_signed_unit_multiple(&t, &parse_ratfunc("1 - z", None).unwrap().0),
        "{out}"
    );
    assert!(out.contains("numerator: ") && out.contains("denominator: "));
}

#[test]
fn trefoil_torsion_json() {
    let o = run_paths(&[
        &"torsion",
        &corpus("trefoil.json"),
        &corpus("trefoil.rep.json"),
        &"--output",
        &"json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["kind"], "symbolic");
    let t = parse_ratfunc(v["expr"].as_str().unwrap(), None).unwrap().0;
    // τ·Δ/(t − 1) is a unit.
    let delta = parse_ratfunc("(t^2 - t + 1)/(t - 1)", None).unwrap().0;
    assert!((t * delta).as_unit().is_some());
}

#[test]
fn non_acyclic_point_exits_two() {
    let o = run_paths(&[
        &"torsion",
        &corpus("circle.json"),
        &corpus("circle.rep.json"),
        &"--at",
        &"1,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not acyclic"), "{}", stderr(&o));
}

#[test]
fn numeric_torsion_with_shift_and_orientation() {
    let base = run_paths(&[
        &"torsion",
        &corpus("circle.json"),
        &corpus("circle.rep.json"),
        &"--at",
        &"0.5",
        &"--output",
        &"json",
    ]);
    let moved = run_paths(&[
        &"torsion",
        &corpus("circle.json"),
        &corpus("circle.rep.json"),
        &"--at",
        &"0.5",
        &"--shift",
        &"-2",
        &"--orientation",
        &"-1",
        &"--output",
        &"json",
    ]);
    let (b, m) = (json(&base), json(&moved));
    let (b, m) = (b["re"].as_f64().unwrap(), m["re"].as_f64().unwrap());
    // det_a = 0.5^(-2) = 4 and the orientation flips the sign.
    assert!((m + 4.0 * b).abs() < 1e-12, "{b} {m}");
}

#[test]
fn zeta_examples() {
    let o = run(&["zeta", "--cat-map", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0));
    let z = parse_ratfunc(stdout(&o).trim(), None).unwrap().0;
    assert_eq!(
        z,
        parse_ratfunc("(1 - z)^2/(1 - 3z + z^2)", None).unwrap().0
    );

    // Only the degree-one factor is -1 at z = 1; the even-degree factors vanish.
    assert_eq!(
        stdout(&run(&["zeta", "--cat-map", "--at", "1"])).trim(),
        "0"
    );
    assert_eq!(
        stdout(&run(&["zeta", "--cat-map", "--at", "1/3"])).trim(),
        "4"
    );

    let point = scratch("point.action.json", r#"{"format": 1, "maps": [[["1"]]]}"#);
    let o = run_paths(&[&"zeta", &point, &"--at", &"0"]);
    assert_eq!(stdout(&o).trim(), "1");

    let o = run_paths(&[&"zeta", &corpus("cat-map.action.json"), &"--at", &"-1"]);
    assert_eq!(stdout(&o).trim(), "4/5");
}

#[test]
fn zeta_usage_errors_exit_one() {
    assert_eq!(run(&["zeta", "--cat-map"]).status.code(), Some(1));
    assert_eq!(run(&["zeta"]).status.code(), Some(1));
    assert_eq!(
        run(&["zeta", "--cat-map", "--at", "x"]).status.code(),
        Some(1)
    );
}

#[test]
fn dyn_empty_orbits() {
    let orbits = scratch("empty.orbits.json", r#"{"format": 1, "orbits": []}"#);
    let o = run_paths(&[
        &"dyn",
        &orbits,
        &corpus("circle.rep.json"),
        &"--bound",
        &"10",
        &"--at",
        &"0.5",
        &"--output",
        &"json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["re"], 1.0);
    assert_eq!(v["im"], 0.0);
    assert_eq!(v["value_tail"], 0.0);
}

#[test]
fn dyn_cat_map_matches_zeta() {
    let o = run_paths(&[
        &"dyn",
        &corpus("cat-map.orbits.json"),
        &corpus("cat-map.point.json"),
        &"--bound",
        &"30",
        &"--output",
        &"json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let u: f64 = 0.1;
    let zeta = (1.0 - u) * (1.0 - u) / (1.0 - 3.0 * u + u * u);
    assert!((v["re"].as_f64().unwrap() - 1.0 / zeta).abs() <= 1e-6);
    assert!(v["value_tail"].as_f64().unwrap() <= 1e-6);
    let text = stdout(&run_paths(&[
        &"dyn",
        &corpus("cat-map.orbits.json"),
        &corpus("cat-map.point.json"),
        &"--bound",
        &"30",
    ]));
    assert!(text.contains("value tail bound"), "{text}");
}

#[test]
fn dyn_zero_factor_exits_two() {
    let orbits = scratch(
        "fixed.orbits.json",
        r#"{"format": 1, "orbits": [{"word": [1], "period": 1, "sign": 1, "par_minus": false, "par_plus": false, "filtration": 1.0}]}"#,
    );
    let o = run_paths(&[
        &"dyn",
        &orbits,
        &corpus("circle.rep.json"),
        &"--bound",
        &"5",
        &"--at",
        &"1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("zero factor"), "{}", stderr(&o));
}

#[test]
fn check_suites() {
    let o = run(&["check", "--suite", "torsion", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(
        stdout(&o).lines().any(|l| l == "τ²=Sτ: 200/200 pass"),
        "{}",
        stdout(&o)
    );

    let o = run(&["check", "--suite", "dynamics"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("Lefschetz aggregation: ") && l.ends_with(" pass")));

    assert_eq!(run(&["check", "--suite", "nope"]).status.code(), Some(1));
}

#[test]
fn check_is_deterministic() {
    let a = stdout(&run(&["check", "--suite", "algebra", "--seed", "9"]));
    let b = stdout(&run(&["check", "--suite", "algebra", "--seed", "9"]));
    assert_eq!(a, b);
}

#[test]
fn corpus_suite_and_override() {
    let o = run(&["check", "--suite", "corpus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 5);

    let empty = scratch("marker", "").parent().unwrap().join("empty-corpus");
    std::fs::create_dir_all(&empty).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_torsionlab"))
        .args(["check", "--suite", "corpus"])
        .env("TORSIONLAB_CORPUS", &empty)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn phase_examples() {
    let o = run(&[
        "phase",
        "z",
        "--path",
        "1,0",
        "0.7071067811865476,0.7071067811865476",
        "0,1",
    ]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-6);

    let o = run(&["phase", "z", "--path", "1,0", "0,1", "-1,0", "0,-1", "1,0"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!(v.min(std::f64::consts::PI - v) < 1e-6, "{v}");

    let o = run(&["phase", "1 - z", "--path", "0,0", "2,0"]);
    assert_eq!(o.status.code(), Some(2));

    let file = scratch(
        "t.ratfunc.json",
        r#"{"format": 1, "variables": ["w"], "expr": "w^2"}"#,
    );
    let o = run_paths(&[&"phase", &file, &"--path", &"1,0", &"0,1"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!(
        v.abs() < 1e-6 || (v - std::f64::consts::PI).abs() < 1e-6,
        "{v}"
    );
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(
        run(&["torsion", "missing.json", "missing.rep.json"])
            .status
            .code(),
        Some(1)
    );
    let bad = scratch("bad.json", r#"{"format": 1, "generators": 1}"#);
    assert_eq!(
        run_paths(&[&"torsion", &bad, &corpus("circle.rep.json")])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["phase", "z", "--path", "1,0", "nope"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
