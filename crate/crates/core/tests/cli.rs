//! CLI behaviour: exit codes, schema round-trips, and error channels.

use std::process::Command;

use dendro::anodyne::CertificateWire;
use dendro::subobject::SubobjectWire;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dendro"))
}

fn fixture(name: &str) -> String {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["trees"]).output().unwrap(); // missing --max-vertices
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_3() {
    let out = bin().args(["faces", "r(a,"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));

    // Horn at a non-inner edge.
    let out = bin()
        .args(["horn", "r(a,b)", "--edge", "a"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Both --operad and --dset is a usage error caught by clap.
    let out = bin()
        .args([
            "check-segal",
            "--operad",
            &fixture("com3.json"),
            "--dset",
            &fixture("dset_com2.json"),
            "--max-vertices",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_failures_exit_1_with_witnesses() {
    let out = bin()
        .args([
            "check-normal",
            "--operad",
            &fixture("com3.json"),
            "--max-vertices",
            "2",
            "--json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["normal"], serde_json::Value::Bool(false));
    let fixed = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find_map(|e| e.get("fixed_points"))
        .expect("witness section present");
    assert!(!fixed.as_array().unwrap().is_empty());
}

#[test]
fn subobject_json_round_trips() {
    for cmd in ["core", "boundary", "ext-boundary"] {
        let out = bin().args([cmd, "r(a(x,y),b)", "--json"]).output().unwrap();
        assert!(out.status.success());
        let wire: SubobjectWire = serde_json::from_slice(&out.stdout).unwrap();
        let sub = dendro::subobject::Subobject::from_wire(&wire).unwrap();
        assert_eq!(sub.to_wire(), wire);
    }
}

#[test]
fn certify_verify_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = bin()
        .args([
            "certify",
            "r(a(b),c)",
            "--from",
            "core",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let text = std::fs::read_to_string(&path).unwrap();
    let wire: CertificateWire = serde_json::from_str(&text).unwrap();
    assert_eq!(wire.tree, "r(a(b),c)");
    assert_eq!(
        wire.steps.len(),
        (wire.end.members.len() - wire.start.members.len()) / 2
    );

    let out = bin()
        .args(["verify", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());

    // Tampering: drop a step; verification must fail with exit 1.
    let mut tampered: serde_json::Value = serde_json::from_str(&text).unwrap();
    let steps = tampered["steps"].as_array_mut().unwrap();
    steps.remove(0);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&tampered).unwrap()).unwrap();
    let out = bin()
        .args(["verify", bad.to_str().unwrap(), "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], serde_json::Value::Bool(false));
}

#[test]
fn certify_out_dir_env_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "certify",
            "2(1(0))",
            "--from",
            "core",
            "--out",
            "env_cert.json",
        ])
        .env("DENDRO_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("env_cert.json").exists());
}

#[test]
fn horn_certification_is_a_single_step() {
    let out = bin()
        .args(["certify", "r(a(b),c)", "--from", "horn:a", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let wire: CertificateWire = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(wire.steps.len(), 1);
    assert_eq!(wire.steps[0].inner_edge, "a");
}

#[test]
fn nerve_rejects_invalid_operads() {
    let dir = tempfile::tempdir().unwrap();
    // Corrupt the composition table of cat2: id_y ∘ f ↦ g.
    let text = std::fs::read_to_string(fixture("cat2.json")).unwrap();
    let mut wire: serde_json::Value = serde_json::from_str(&text).unwrap();
    for row in wire["composition"].as_array_mut().unwrap() {
        if row["op"] == "id_y" && row["arg"] == "f" {
            row["result"] = "g".into();
        }
    }
    let path = dir.path().join("bad_operad.json");
    std::fs::write(&path, serde_json::to_string_pretty(&wire).unwrap()).unwrap();
    let out = bin()
        .args(["nerve", path.to_str().unwrap(), "--tree", "r(a)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("axiom"));
}
