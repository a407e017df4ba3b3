use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use sdcodes::data;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sdcodes"))
}

fn bundled(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = bin().args(args).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn extremal40(dir: &TempDir) -> String {
    let c = data::extremal_doubly_even_40().unwrap();
    write(dir, "extremal40.txt", &c.generator().to_text())
}

#[test]
fn verify_bundled_codes() {
    let c10 = bundled("c10.f4");
    let (out, v) = run(&["verify", c10.to_str().unwrap(), "--even", "--self-dual", "--min-weight", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(v["min_weight"], 4);

    let d1 = bundled("d1.z4");
    let (out, v) = run(&["verify", d1.to_str().unwrap(), "--self-dual", "--type", "I", "--extremal"]);
    assert!(out.status.success());
    assert_eq!(v["type"], "I");
    assert_eq!(v["min_euclidean_weight"]["min_weight"], 16);
}

#[test]
fn verify_failures_set_exit_codes() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.txt", "not a code\n");
    let (out, _) = run(&["verify", &junk]);
    assert_eq!(out.status.code(), Some(2));

    let d1 = bundled("d1.z4");
    let (out, v) = run(&["verify", d1.to_str().unwrap(), "--type", "II"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["expectations"][0]["pass"], false);
}

#[test]
fn classify_writes_classes_and_manifest() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("n16");
    let (out, v) = run(&["classify", "16", "--min-weight", "4", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(v["counts"]["doubly"], 2);
    assert_eq!(v["counts"]["singly"], 1);
    assert!(out_dir.join("class-003.txt").exists());
    let m: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["counts"], v["counts"]);

    let (_, v) = run(&["classify", "24", "--min-weight", "8"]);
    assert_eq!(v["counts"]["doubly"], 1);
    assert_eq!(v["counts"]["singly"], 0);

    let (out, _) = run(&["classify", "32", "--min-weight", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pipeline_default_and_design() {
    let (out, v) = run(&["pipeline-beta10", "--design-check"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(v["beta"], 10);
    assert_eq!(v["weight_distribution"]["8"], 285);
    assert_eq!(v["shadow_distribution"]["4"], 10);
    let mut a4: Vec<u64> = v["doubly_even_neighbors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["a4"].as_u64().unwrap())
        .collect();
    a4.sort();
    assert_eq!(a4, vec![0, 10]);
    assert_eq!(v["design"]["lambda"], 57);
}

#[test]
fn pipeline_covering_radius_seven() {
    let (out, v) = run(&["pipeline-beta10", "--parent-aut", "43200", "--covering-radius"]);
    assert!(out.status.success());
    assert_eq!(v["covering"]["radius"], 7);
}

#[test]
fn theta_commands() {
    let dir = TempDir::new().unwrap();
    let e40 = extremal40(&dir);
    let (out, v) = run(&["theta", "--lb", &e40, "--max-norm", "4"]);
    assert!(out.status.success());
    assert_eq!(v["shells"]["4"], 39600);

    let d1 = bundled("d1.z4");
    let (out, v) = run(&["theta", "--a4", d1.to_str().unwrap(), "--max-norm", "4", "--fit"]);
    assert!(out.status.success());
    assert_eq!(v["shells"]["4"], 19120);
    let a: Vec<&str> = v["fit"]["a"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(a, vec!["1", "-80", "1360", "-2560", "0", "0"]);

    let (out, v) = run(&["theta", "--lc-odd", &e40, "--max-norm", "4", "--shadow"]);
    assert!(out.status.success());
    assert_eq!(v["shadow"]["agree"], true);
    assert_eq!(v["shadow"]["counted"]["2"], 80);

    let ham = write(&dir, "h8.txt", &data::hamming8().to_text());
    let lat = dir.path().join("e8.lat");
    let (out, v) = run(&[
        "theta", "--la", &ham, "--max-norm", "2", "--enumerate", "--export", lat.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(v["enumeration_agrees"], true);
    assert_eq!(v["shells"]["2"], 240);
    let (out, v) = run(&["verify", lat.to_str().unwrap(), "--unimodular", "--even", "--min-norm", "2"]);
    assert!(out.status.success());
    assert_eq!(v["min_norm"], "2");

    let (out, _) = run(&["theta", "--lb", &e40, "--max-norm", "4", "--enumerate"]);
    assert_eq!(out.status.code(), Some(2), "dimension 40 enumeration needs --long");
}

#[test]
fn small_code_commands() {
    let dir = TempDir::new().unwrap();
    let c10 = bundled("c10.f4");
    let (_, v) = run(&["aut-order", c10.to_str().unwrap()]);
    assert_eq!(v["order"], "16");

    let b = dir.path().join("b.txt");
    let (out, v) = run(&["bmap", c10.to_str().unwrap(), "--out", b.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(v["kind"], "doubly-even");
    assert_eq!(v["a4"], 10);
    let (out, v) = run(&["tdec", b.to_str().unwrap(), "--beta", "10"]);
    assert!(out.status.success());
    assert_eq!(v["decomposition"]["tetrads"].as_array().unwrap().len(), 10);
    let (out, _) = run(&["neighbors", b.to_str().unwrap(), "--beta", "10"]);
    assert_eq!(out.status.code(), Some(2), "the sweep needs --long");

    let s = write(&dir, "s.txt", "binary 4 2\n1100\n0011\n");
    let (out, v) = run(&["shadow", &s]);
    assert!(out.status.success());
    assert_eq!(v["shadow_weights"]["2"], 4);
    let (_, v) = run(&["covering-radius", &s]);
    assert_eq!(v["radius"], 2);
    let (_, v) = run(&["coset-dist", &s, "--min-weight", "1"]);
    assert_eq!(v["cosets"], 2);

    let h = write(&dir, "h8.txt", &data::hamming8().to_text());
    let (_, v) = run(&["covering-radius", &h]);
    assert_eq!(v["radius"], 2);

    let e40 = extremal40(&dir);
    let (out, _) = run(&["coset-dist", &e40, "--min-weight", "6"]);
    assert_eq!(out.status.code(), Some(2), "large census needs --long");
}

#[test]
fn neighbors_of_singly_even_code() {
    let dir = TempDir::new().unwrap();
    let c = data::beta10_code().unwrap();
    let p = write(&dir, "c.txt", &c.generator().to_text());
    let out_dir = dir.path().join("nb");
    let (out, v) = run(&["neighbors", &p, "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let mut mins: Vec<u64> = v["doubly_even_neighbors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["min_weight"].as_u64().unwrap())
        .collect();
    mins.sort();
    assert_eq!(mins, vec![4, 8]);
    assert!(out_dir.join("neighbor-2.txt").exists());
}

#[test]
fn outputs_are_deterministic_and_manifest_is_recorded() {
    let dir = TempDir::new().unwrap();
    let m1 = dir.path().join("m1.json");
    let m2 = dir.path().join("m2.json");
    let a = bin()
        .args(["classify", "16", "--min-weight", "4", "--threads", "1", "--manifest", m1.to_str().unwrap()])
        .output()
        .unwrap();
    let b = bin()
        .args(["classify", "16", "--min-weight", "4", "--threads", "2", "--manifest", m2.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let m1: Value = serde_json::from_str(&fs::read_to_string(&m1).unwrap()).unwrap();
    let m2: Value = serde_json::from_str(&fs::read_to_string(&m2).unwrap()).unwrap();
    assert_eq!(m1["outputs"]["stdout"], m2["outputs"]["stdout"]);
    assert_eq!(m1["command"], "classify");
    assert_eq!(m1["passed"], true);

    let c10 = bundled("c10.f4");
    let out = bin().args(["aut-order", c10.to_str().unwrap()]).output().unwrap();
    let manifest: Value = serde_json::from_slice(out.stderr.trim_ascii()).unwrap();
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}
