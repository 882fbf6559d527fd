use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use dgk::format::{encode_algebra, encode_module, Document, ModuleDoc, ProfileJson};
use dgk_core::dg::{DGAlgebra, DGModule, Side};
use dgk_core::exactlin::{Field, PrimeField, Rationals};
use dgk_core::genlab::{dual_numbers, ground, make_exterior, residue_module};
use serde_json::Value;
use tempfile::TempDir;

fn dgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgk"))
        .args(args)
        .env_remove("DGK_FIELD")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn module_doc<F: Field>(m: &DGModule<F>) -> Document {
    Document::Module(ModuleDoc {
        field: m.field().spec().to_string(),
        algebra: encode_algebra(m.algebra()),
        module: encode_module(m),
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_pair<F: Field>(dir: &TempDir, m: &DGModule<F>, n: &DGModule<F>) -> (PathBuf, PathBuf) {
    (
        write(dir, "m.json", &module_doc(m).to_json()),
        write(dir, "n.json", &module_doc(n).to_json()),
    )
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn regular_pair<F: Field>(a: DGAlgebra<F>) -> (DGModule<F>, DGModule<F>) {
    let a = Arc::new(a);
    (
        DGModule::regular(a.clone(), Side::Right),
        DGModule::regular(a, Side::Left),
    )
}

fn small_profile(dir: &TempDir, inject: bool) -> PathBuf {
    let p = ProfileJson {
        fields: vec!["F101".into()],
        instance_count: 6,
        derived_instances: 3,
        naturality_instances: 2,
        perturbations: 3,
        inject_failure: inject,
        ..ProfileJson::default()
    };
    write(dir, "profile.json", &serde_json::to_string_pretty(&p).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ground_field_theta_is_the_identity() {
    let dir = TempDir::new().unwrap();
    let (m, n) = regular_pair(ground(PrimeField::new(101).unwrap()));
    let (pm, pn) = write_pair(&dir, &m, &n);
    let out = dir.path().join("report.json");
    let o = dgk(&["kunneth", s(&pm), s(&pn), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let r = report(&out);
    assert_eq!(r["command"], "kunneth");
    assert_eq!(r["status"], "pass");
    let theta = r["artifacts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["name"] == "theta")
        .unwrap();
    assert_eq!(theta["matrix"], serde_json::json!([["1"]]));
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys[0], "command");
    assert!(keys.contains(&"instance_refs") && keys.contains(&"checks") && keys.contains(&"timing"));
    for c in r["checks"].as_array().unwrap() {
        assert!(
            c["name"].is_string() && c["status"] == "pass" && c["detail"].is_string(),
            "{c}"
        );
    }
}

#[test]
fn exterior_regular_modules_have_one_dimensional_top() {
    let dir = TempDir::new().unwrap();
    let (m, n) = regular_pair(make_exterior(Rationals));
    let (pm, pn) = write_pair(&dir, &m, &n);
    let out = dir.path().join("report.json");
    let o = dgk(&["kunneth", s(&pm), s(&pn), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let r = report(&out);
    let theta = r["artifacts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["name"] == "theta")
        .unwrap();
    assert_eq!((theta["rows"].as_u64(), theta["cols"].as_u64()), (Some(1), Some(1)));
    assert_eq!(theta["matrix"], serde_json::json!([["1/1"]]));
}

#[test]
fn field_flag_and_environment_must_match_the_file() {
    let dir = TempDir::new().unwrap();
    let (m, n) = regular_pair(ground(Rationals));
    let (pm, pn) = write_pair(&dir, &m, &n);
    let o = dgk(&["kunneth", s(&pm), s(&pn), "--field", "F7"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("field"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_dgk"))
        .args(["kunneth", s(&pm), s(&pn)])
        .env("DGK_FIELD", "F7")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_dgk"))
        .args(["kunneth", s(&pm), s(&pn)])
        .env("DGK_FIELD", "Q")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn sides_and_algebras_are_checked() {
    let dir = TempDir::new().unwrap();
    let f = PrimeField::new(101).unwrap();
    let (m, n) = regular_pair(make_exterior(f));
    let (pm, pn) = write_pair(&dir, &m, &n);
    let o = dgk(&["kunneth", s(&pn), s(&pm)]);
    assert_eq!(code(&o), 2);
    let (_, other) = regular_pair(dual_numbers(f));
    let po = write(&dir, "other.json", &module_doc(&other).to_json());
    let o = dgk(&["kunneth", s(&pm), s(&po)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("algebra differs"), "{}", stderr(&o));
}

#[test]
fn validate_reports_a_broken_leibniz_rule() {
    let dir = TempDir::new().unwrap();
    let f = PrimeField::new(101).unwrap();
    let (_, n) = regular_pair(make_exterior(f));
    let Document::Module(mut doc) = module_doc(&n) else {
        unreachable!()
    };
    doc.module.differentials[0] = vec![vec!["1".into()]];
    let p = write(&dir, "bad.json", &Document::Module(doc).to_json());
    let out = dir.path().join("report.json");
    let o = dgk(&["validate", s(&p), "--out", s(&out)]);
    assert_eq!(code(&o), 1, "{}{}", stdout(&o), stderr(&o));
    let r = report(&out);
    let failed: Vec<&Value> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    let text = failed[0].to_string();
    assert!(text.contains("Leibniz"), "{text}");
    assert!(failed[0]["counterexample"].is_object());
}

#[test]
fn validate_accepts_the_zero_module_and_a_resolution() {
    let dir = TempDir::new().unwrap();
    let a = Arc::new(dual_numbers(Rationals));
    let z = DGModule::zero(Side::Left, a.clone(), 0);
    let p = write(&dir, "zero.json", &module_doc(&z).to_json());
    let o = dgk(&["validate", s(&p)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));

    let m = residue_module(&a, Side::Right).unwrap();
    let n = residue_module(&a, Side::Left).unwrap();
    let (pm, pn) = write_pair(&dir, &m, &n);
    let res = dir.path().join("res.json");
    let out = dir.path().join("report.json");
    let o = dgk(&[
        "derived-kunneth",
        s(&pm),
        s(&pn),
        "--resolution",
        s(&res),
        "--out",
        s(&out),
    ]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let r = report(&out);
    let notes = r["notes"].to_string();
    assert!(notes.contains("has dimension 1"), "{notes}");
    let o = dgk(&["validate", s(&res)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let o = dgk(&["derived-kunneth", s(&pm), s(&pn), "--depth", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn parse_errors_are_structural_with_a_location() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "bad.json",
        "{\"kind\": \"module\",\n  \"field\": \"F101\",\n  \"algebra\": 7\n}\n",
    );
    let o = dgk(&["validate", s(&p)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let o = dgk(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn gen_is_deterministic_and_writes_atomically() {
    let dir = TempDir::new().unwrap();
    let profile = small_profile(&dir, false);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = dgk(&["gen", "--profile", s(&profile), "--seed", "9", "--out", s(p)]);
        assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
    let o = dgk(&["validate", s(&a)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let o = dgk(&["kunneth", s(&a)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let o = dgk(&["gen", "--profile", s(&profile), "--field", "Q"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"kind\": \"corpus\""));
}

#[test]
fn suite_passes_and_repeats() {
    let dir = TempDir::new().unwrap();
    let profile = small_profile(&dir, false);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = dgk(&["suite", "--profile", s(&profile), "--out", s(p)]);
        assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    }
    let strip = |p: &Path| {
        let mut v = report(p);
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let r = report(&a);
    assert_eq!(r["seed"], dgk_core::genlab::DEFAULT_SEED);
    assert_eq!(r["instance_refs"].as_array().unwrap().len(), 6);
}

#[test]
fn injected_failure_is_shrunk() {
    let dir = TempDir::new().unwrap();
    let profile = small_profile(&dir, true);
    let out = dir.path().join("report.json");
    let o = dgk(&["suite", "--profile", s(&profile), "--out", s(&out)]);
    assert_eq!(code(&o), 1, "{}{}", stdout(&o), stderr(&o));
    let r = report(&out);
    let failed = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["status"] == "fail")
        .expect("a failing check");
    let cx = &failed["counterexample"];
    assert_eq!(cx["shrunk"], true, "{cx}");
    assert_eq!(cx["reproducer"]["kind"], "instance");
    assert!(cx["vector"].is_array(), "{cx}");
}

#[test]
fn empty_corpus_is_structural() {
    let dir = TempDir::new().unwrap();
    let p = ProfileJson {
        instance_count: 0,
        ..ProfileJson::default()
    };
    let path = write(&dir, "profile.json", &serde_json::to_string(&p).unwrap());
    let o = dgk(&["suite", "--profile", s(&path)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("instance_count"), "{}", stderr(&o));
}
