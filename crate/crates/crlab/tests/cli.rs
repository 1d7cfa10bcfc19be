use std::process::{Command, Output};

fn crlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crlab")).args(args).env_remove("CRLAB_DEPTH").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    assert_eq!(code(&crlab(&["model"])), 0);
    assert_eq!(code(&crlab(&["run", "rigidity"])), 0);
    assert_eq!(code(&crlab(&["cohomology"])), 1);
    assert_eq!(code(&crlab(&["nope"])), 2);
    assert_eq!(code(&crlab(&["describe", "nope"])), 2);
    assert_eq!(code(&crlab(&["catalog", "remove"])), 2);
    assert_eq!(code(&crlab(&["tube", "--k", "1"])), 2);
    assert_eq!(code(&crlab(&["model", "--seed", "x"])), 2);
}

#[test]
fn tube_k3_reports_freeman_dims() {
    let o = crlab(&["tube", "--k", "3", "--samples", "10", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("tube.k=3.freeman") && out.contains("[3, 2, 1, 0] at 10 samples"), "{out}");
    assert!(!out.contains("tube.k=4"));
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("crlab-a-{}.json", std::process::id()));
    let b = dir.join(format!("crlab-b-{}.json", std::process::id()));
    for p in [&a, &b] {
        crlab(&["examples", "--t", "1/2", "--json", p.to_str().unwrap()]);
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = (std::fs::remove_file(&a), std::fs::remove_file(&b));
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["suite"], "examples");
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.contains(&"examples.ex4.2.t=1/2"));
}

#[test]
fn describe_entries() {
    let out = String::from_utf8(crlab(&["describe", "model8"]).stdout).unwrap();
    assert!(out.starts_with("model8 (8-dim)"));
    assert!(out.contains("basis: e, z, zb, E, M, Mb, N, Nb"));
    assert!(out.contains("stabilizer dim 1"));
    let out = String::from_utf8(crlab(&["describe", "ex26"]).stdout).unwrap();
    assert!(out.contains("nondegeneracy order 4"));
    let out = String::from_utf8(crlab(&["describe", "sl2_s3"]).stdout).unwrap();
    assert!(out.contains("[z, L] = 4*z"), "{out}");
}

#[test]
fn depth_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_crlab")).args(["prolongation"]).env("CRLAB_DEPTH", "3").output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("[1, 2, 4, 6, 9, 12]"));
    let o = Command::new(env!("CARGO_BIN_EXE_crlab")).args(["prolongation"]).env("CRLAB_DEPTH", "deep").output().unwrap();
    assert_eq!(code(&o), 2);
}
