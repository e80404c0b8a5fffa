use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2orbifold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn build_standard_json() {
    let out = run(&["build", "--kind", "1", "--keep1", "all", "--keep2", "all"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["betti"]["b2"], 0);
    assert_eq!(v["betti"]["b3"], 7);
    assert_eq!(v["betti"]["b1N"], 0);
    assert_eq!(v["singular_points"], 2);
    assert_eq!(v["gauge_group"]["abelian_rank"], 0);
    assert_eq!(v["singularities"].as_array().unwrap().len(), 2);
}

#[test]
fn build_from_config_with_override() {
    let dir = std::env::temp_dir().join(format!("g2orbifold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(
        &path,
        r#"{ "kind": 1, "keep1": [1,2,3,4,5,6,7], "keep2": [], "options": { "crosscheck": true } }"#,
    )
    .unwrap();
    let out = run(&["build", "--config", path.to_str().unwrap(), "--kind", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["spec"]["kind"], 2);
    assert_eq!(v["singularities"][0]["label"], "E7");
    let text = run(&["build", "--config", path.to_str().unwrap(), "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("E7 in E8_1"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn flat_model() {
    let out = run(&["flat", "--kind", "1", "--n", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["monodromy_relation"], true);
    assert_eq!(v["gamma_order"], 3);
}

#[test]
fn rejects_bad_input() {
    assert!(!run(&["build", "--kind", "3", "--keep1", "none", "--keep2", "none"]).status.success());
    assert!(!run(&["build", "--kind", "1", "--keep1", "1,x", "--keep2", "none"]).status.success());
    assert!(!run(&["build", "--kind", "1"]).status.success());
    assert!(!run(&["flat", "--kind", "1", "--n", "0"]).status.success());
}
