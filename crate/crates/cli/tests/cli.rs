use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stab_core::bounds::{random_input, random_instance, BoundCase};
use stab_core::json::entry_to_json;

const MEMBER: &str = r#"{"rows": [[4, 5], [{"label": "pi"}, 2, 3], [-3, -2, {"label": "pi", "sign": "-"}], [-5, -4]]}"#;
const FIRST_DISPLAY: &str = r#"{"rows": [[4, 5], [{"label": "pi"}, 2, 3], [-3, -2, {"label": "pi", "sign": "-"}], [-5, -3]]}"#;

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Scratch {
        Scratch { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn stab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stab")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn validate_accepts_the_member_and_flags_the_first_display() {
    let s = Scratch::new();
    let ok = stab(&["validate", p(&s.file("a.json", MEMBER)), "--phi", "+"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json_out(&ok);
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["membership"]["accepted"], json!(true));

    let bad = stab(&["validate", p(&s.file("b.json", FIRST_DISPLAY))]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json_out(&bad);
    assert_eq!(v["valid"], json!(false));
    assert_eq!(v["skew"][0]["row"], json!(-1));
    assert_eq!(v["skew"][0]["column"], json!(2));
}

#[test]
fn validate_checks_the_pyramid() {
    let s = Scratch::new();
    let out = stab(&["validate", p(&s.file("a.json", MEMBER)), "--pyramid", p(&s.file("p.json", r#"{"rows": [3, 3]}"#))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_out(&out)["problems"][0]["message"].as_str().unwrap().contains("boxes"));
}

#[test]
fn malformed_input_exits_2() {
    let s = Scratch::new();
    let out = stab(&["validate", p(&s.file("t.json", r#"{"rows": [[1, 2"#))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parsing"));
    assert_eq!(stab(&["decide", "/nonexistent.json", "--type", "D"]).status.code(), Some(2));
    assert_eq!(stab(&["validate", p(&s.file("e.json", r#"{"rows": [["4/2"]]}"#))]).status.code(), Some(2));
}

#[test]
fn decide_verdicts_and_exit_codes() {
    let s = Scratch::new();
    let yes = stab(&["decide", p(&s.file("a.json", MEMBER)), "--type", "D"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json_out(&yes)["verdict"], json!("finite-dimensional"));

    let no = stab(&["decide", p(&s.file("b.json", r#"{"rows": [[-1], [1]]}"#)), "--type", "C"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json_out(&no)["verdict"], json!("not-finite-dimensional"));
}

#[test]
fn enumerate_single_box_over_zero() {
    let s = Scratch::new();
    let out = stab(&["enumerate", p(&s.file("p.json", r#"{"rows": [1]}"#)), "--alphabet", p(&s.file("a.json", "[0]")), "--phi", "+"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    // the single filling stacks 0 over 0, which is not column strict
    assert_eq!(v["candidates"], json!(1));
    assert_eq!(v["count"], json!(0));
    let wider = stab(&["enumerate", p(&s.file("p2.json", r#"{"rows": [1]}"#)), "--alphabet", p(&s.file("b.json", "[0, 1, -1]"))]);
    let v = json_out(&wider);
    assert_eq!(v["candidates"], json!(3));
    assert_eq!(v["classes"], json!([{"rows": [[1], [-1]]}]));
}

#[test]
fn orbit_lists_members_and_words() {
    let s = Scratch::new();
    let out = stab(&["orbit", p(&s.file("a.json", r#"{"rows": [[1], [-1]]}"#)), "--type", "D"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["complete"], json!(true));
    assert_eq!(v["orbit"].as_array().unwrap().len(), v["words"].as_array().unwrap().len());
    assert_eq!(v["words"][0], json!([]));
}

#[test]
fn primids_is_deterministic_and_honours_out() {
    let s = Scratch::new();
    let pyr = s.file("p.json", r#"{"rows": [1, 2]}"#);
    let alpha = s.file("a.json", r#"[0, 1, -1, {"label": "zeta"}, {"label": "zeta", "sign": "-"}]"#);
    let args = ["primids", p(&pyr), "--type", "D", "--alphabet", p(&alpha)];
    let first = stab(&args);
    let second = stab(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let target = s.path("catalog.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", p(&target)]);
    assert!(stab(&with_out).status.success());
    assert_eq!(std::fs::read(&target).unwrap(), first.stdout);
    let v = json_out(&first);
    assert_eq!(v["type"], json!("D"));
    assert!(v["accepted"].as_array().unwrap().iter().all(|e| e["orbit_witness"].is_array()));
}

#[test]
fn verify_passes_and_fails_with_the_right_codes() {
    let ok = stab(&["verify", "rs-oracles", "--seed", "1", "--n", "exhaustive"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_out(&ok)["failed"], json!(0));

    let bad = stab(&["verify", "m1prime"]);
    assert_eq!(bad.status.code(), Some(3));
    let v = json_out(&bad);
    assert_eq!(v["findings"][0]["label"], json!("counterexample"));
    assert!(v["findings"][0]["reproducer"]["table"]["rows"].is_array());

    assert_eq!(stab(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_is_byte_stable_for_a_seed() {
    let run = || stab(&["verify", "split-lemmas", "--seed", "9", "--n", "150"]).stdout;
    assert_eq!(run(), run());
}

#[test]
fn bound_checks_one_instance() {
    let s = Scratch::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let input = random_input(BoundCase::EoLe, 3, 6, &mut rng).unwrap();
    let az = (0..1000).find_map(|_| random_instance(&input, 12, &mut rng)).unwrap();
    let rows: Vec<Vec<Value>> = az.rows().iter().map(|r| r.iter().map(|&e| entry_to_json(e)).collect()).collect();
    let body = json!({ "p": input.p(), "rows": rows }).to_string();
    let out = stab(&["bound", p(&s.file("i.json", &body))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_out(&out)["case"], json!("EO<="));

    let broken = json!({ "p": [2, 4], "rows": [[0], [0, 1], [0, 1], [5]] }).to_string();
    assert_eq!(stab(&["bound", p(&s.file("j.json", &broken))]).status.code(), Some(2));
}
