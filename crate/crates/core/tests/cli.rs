use std::io::Write;
use std::process::{Command, Output};

fn jmodlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jmodlab"))
        .args(args)
        .env_remove("JMODLAB_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_path(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("jmodlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn inspect_zn12() {
    let o = jmodlab(&["inspect", "zn(12)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("order           12"));
    assert!(s.contains("ideals          6"));
    assert!(s.contains("J(R)            {0,6}"));
}

#[test]
fn inspect_json_idealization() {
    let o = jmodlab(&["inspect", "idealization(zn(4), cyclic(2))", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ring"]["order"], 8);
    assert_eq!(v["ring"]["jacobson"].as_array().unwrap().len(), 4);
}

#[test]
fn inspect_zn2_and_bad_descriptor() {
    let o = jmodlab(&["inspect", "zn(2)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ring"]["ideals"], 2);
    assert_eq!(v["ring"]["jacobson"], serde_json::json!([0]));
    assert_eq!(jmodlab(&["inspect", "zn("]).status.code(), Some(2));
    assert_eq!(jmodlab(&["inspect", "zn(1)"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let holds = jmodlab(&["check", "weakly-j-submodule", "--ring", "zn(12)", "--module", "cyclic(6)"]);
    assert_eq!(holds.status.code(), Some(0));
    let fails = jmodlab(&["check", "j-submodule", "--ring", "zn(12)", "--module", "cyclic(6)"]);
    assert_eq!(fails.status.code(), Some(1));
    assert!(stdout(&fails).contains("r=2 m=3"));
    let whole = jmodlab(&["check", "weakly-j-submodule", "--ring", "zn(12)", "--module", "cyclic(6)", "--gens", "1"]);
    assert_eq!(whole.status.code(), Some(2));
    let unknown = jmodlab(&["check", "semiprime", "--ring", "zn(12)"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn check_ideal_json() {
    let o = jmodlab(&["check", "j-ideal", "--ring", "zn(12)", "--gens", "", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"], serde_json::json!({"kind": "ring_pair", "a": 2, "b": 6}));
}

#[test]
fn verify_filtered_and_reproducible() {
    let a = temp_path("a.json");
    let b = temp_path("b.json");
    let o = jmodlab(&["verify", "--props", "THM_EQ1,prop_int", "--out", a.to_str().unwrap(), "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    jmodlab(&["verify", "--props", "THM_EQ1,prop_int", "--out", b.to_str().unwrap(), "--jobs", "3"]);
    let ra = std::fs::read(&a).unwrap();
    assert_eq!(ra, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(v["properties"], serde_json::json!(["THM_EQ1", "PROP_INT"]));
    assert!(v["records"][0].get("elapsed_ms").is_none());
}

#[test]
fn verify_bad_corpus() {
    let p = temp_path("bad.toml");
    std::fs::File::create(&p).unwrap().write_all(b"name = \"x\"\n[[instance]]\nring = \"zn(\"\n").unwrap();
    assert_eq!(jmodlab(&["verify", "--corpus", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(jmodlab(&["verify", "--corpus", "/nonexistent.toml"]).status.code(), Some(2));
    assert_eq!(jmodlab(&["verify", "--props", "NOPE"]).status.code(), Some(2));
}

#[test]
fn variant_failures_do_not_fail_verify() {
    let o = jmodlab(&["verify", "--props", "V1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(variant)"));
}

#[test]
fn hunt_v1_and_fields() {
    let o = jmodlab(&["hunt", "V1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ring=zn(12); module=cyclic(6)"));
    let p = temp_path("fields.toml");
    std::fs::write(
        &p,
        "name = \"fields\"\n[[instance]]\nring = \"zn(2)\"\n[[instance]]\nring = \"zn(5)\"\n\
         [[instance]]\nring = \"zn(7)\"\nmodule = \"product(self, self)\"\n",
    )
    .unwrap();
    let none = jmodlab(&["hunt", "V1", "--corpus", p.to_str().unwrap()]);
    assert_eq!(none.status.code(), Some(1));
    assert_eq!(jmodlab(&["hunt", "V99"]).status.code(), Some(2));
    assert_eq!(jmodlab(&["hunt", "THM_EQ1"]).status.code(), Some(2));
}

#[test]
fn max_order_flag_and_env() {
    let o = jmodlab(&["inspect", "zn(40)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(jmodlab(&["inspect", "zn(40)", "--max-order", "36"]).status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_jmodlab"))
        .args(["inspect", "zn(40)"])
        .env("JMODLAB_MAX_ORDER", "20")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn no_arguments_is_usage_error() {
    assert_eq!(jmodlab(&[]).status.code(), Some(2));
}
