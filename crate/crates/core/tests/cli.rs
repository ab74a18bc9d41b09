use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mcrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcrank"))
        .args(args)
        .env_remove("MCRANK_SEED")
        .env_remove("MCRANK_PRIME")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_then_gcr() {
    let dir = tempfile::tempdir().unwrap();
    let g86 = path(dir.path(), "g86.json");
    assert!(mcrank(&["gen", "circulant", "8", "6", "-o", &g86]).status.success());
    let file: Value = serde_json::from_str(&fs::read_to_string(&g86).unwrap()).unwrap();
    assert_eq!(file["edges"].as_array().unwrap().len(), 48);
    assert_eq!(json(&mcrank(&["gcr", &g86]))["gcr"], 4);

    let t7 = path(dir.path(), "t7.json");
    assert!(mcrank(&["gen", "triangular", "7", "-o", &t7]).status.success());
    let report = json(&mcrank(&["gcr", &t7]));
    assert_eq!(report["gcr"], 4);
    assert!(report["tangent"][0]["dim_image"].is_u64());

    let full = path(dir.path(), "k.txt");
    fs::write(&full, "***\n***\n").unwrap();
    assert_eq!(json(&mcrank(&["gcr", &full]))["gcr"], 2);

    let g3 = json(&mcrank(&["gen", "sym-join-family", "3"]));
    assert_eq!(g3["edges"].as_array().unwrap().len(), 18);
    assert!(g3.get("m").is_none());
    let path_text = mcrank(&["gen", "tree-path", "4", "4", "--format", "text"]);
    assert_eq!(String::from_utf8(path_text.stdout).unwrap().matches('*').count(), 7);
}

#[test]
fn symmetric_gcr_and_env_seed() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.json");
    assert!(mcrank(&["gen", "sym-join-family", "6", "-o", &g]).status.success());
    assert_eq!(json(&mcrank(&["gcr", &g]))["gcr"], 9);
    let out = Command::new(env!("CARGO_BIN_EXE_mcrank"))
        .args(["gcr", &g])
        .env("MCRANK_SEED", "77")
        .output()
        .unwrap();
    let report = json(&out);
    assert_eq!(report["tangent"][0]["seeds"][0], 77);
}

#[test]
fn certify() {
    let ok = json(&mcrank(&["certify", "--circulant", "4", "2"]));
    assert_eq!((ok["valid"].as_bool(), ok["gcr"].as_u64()), (Some(true), Some(2)));
    assert_eq!(json(&mcrank(&["certify", "--circulant", "9", "3"]))["gcr"], 6);
    assert_eq!(mcrank(&["certify", "--circulant", "6", "4"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cube = path(dir.path(), "cube.json");
    assert!(mcrank(&["gen", "cube", "-o", &cube]).status.success());
    let good = path(dir.path(), "good.json");
    fs::write(&good, r#"{"rows": [[0, 1], [2, 3]], "cols": [[0, 2], [1, 3]]}"#).unwrap();
    assert!(mcrank(&["certify", &cube, "--rank", "2", "--partition", &good]).status.success());
    let bad = path(dir.path(), "bad.json");
    fs::write(&bad, r#"{"rows": [[0, 1], [2, 3]], "cols": [[0, 1], [2, 3]]}"#).unwrap();
    let out = mcrank(&["certify", &cube, "--rank", "2", "--partition", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(mcrank(&["certify", &cube]).status.code(), Some(1));
}

#[test]
fn complete() {
    let dir = tempfile::tempdir().unwrap();
    // generic data on T_6
    let t6 = path(dir.path(), "t6.json");
    let values: Vec<String> = (0..6)
        .flat_map(|i| (0..=i).map(move |j| format!("[{i},{j},{}]", 3 + 7 * i * i + 11 * j + i * j * j)))
        .collect();
    fs::write(&t6, format!(r#"{{"kind":"bipartite","m":6,"n":6,"values":[{}],"prime":1000003}}"#, values.join(","))).unwrap();
    let out = json(&mcrank(&["complete", &t6, "--chordal"]));
    assert_eq!(out["rank"], 3);
    assert_eq!(out["exact_match"], true);

    let bad = path(dir.path(), "counter.json");
    fs::write(
        &bad,
        r#"{"kind":"bipartite","m":3,"n":3,"values":[[0,0,"1"],[0,1,"1"],[0,2,"1"],[1,0,"1"],[1,1,"1"],[1,2,"2"],[2,0,"0"],[2,1,"1"]]}"#,
    )
    .unwrap();
    let out = mcrank(&["complete", &bad, "--chordal"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("minor vanishes"));

    let a = path(dir.path(), "a.json");
    fs::write(
        &a,
        r#"{"kind":"bipartite","m":4,"n":4,"values":[[0,1,"-1.5"],[0,2,"-1"],[0,3,"1"],[1,0,"-5"],[1,2,"1"],[1,3,"-2"],[2,0,"-2"],[2,1,"1"],[2,3,"-1"],[3,0,"1"],[3,1,"-1"],[3,2,"-1"]]}"#,
    )
    .unwrap();
    let out = json(&mcrank(&["complete", &a, "--rank", "3"]));
    assert!(out["max_deviation"].as_f64().unwrap() < 1e-8);
    assert_eq!(mcrank(&["complete", &a, "--rank", "2"]).status.code(), Some(2));
    assert_eq!(mcrank(&["complete", &a]).status.code(), Some(1));
}

#[test]
fn sample() {
    let dir = tempfile::tempdir().unwrap();
    let knk = json(&mcrank(&["sample", "--knk1", "1", "--trials", "10000"]));
    let full: f64 = knk["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["rank"] == 2)
        .map(|c| c["frequency"].as_f64().unwrap())
        .sum();
    assert!((full - 0.5).abs() <= 0.02, "{full}");

    let gn = json(&mcrank(&["sample", "--gn", "3"]));
    assert_eq!(gn["typical_ranks"], serde_json::json!([4, 5, 6]));

    let records = path(dir.path(), "records.csv");
    let cube = json(&mcrank(&["sample", "--cube", "--trials", "300", "--seed", "3", "--records", &records]));
    assert_eq!(cube["trials"], 300);
    let csv = fs::read_to_string(&records).unwrap();
    assert_eq!(csv.lines().count(), 301);
    let again = json(&mcrank(&["sample", "--cube", "--trials", "300", "--seed", "3"]));
    assert_eq!(cube, again);

    let tree = path(dir.path(), "tree.json");
    assert!(mcrank(&["gen", "tree-star", "1", "4", "-o", &tree]).status.success());
    let scan = json(&mcrank(&["sample", &tree, "--rank", "1", "--trials", "20"]));
    assert_eq!(scan["classes"][0]["rank"], 1);
    assert_eq!(scan["classes"][0]["count"], 20);
}

#[test]
fn report_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = path(dir.path(), "tables");
    let out = mcrank(&["report", "--paper-tables", "--families", "cycle,circulant,hn", "-o", &out_dir]);
    assert!(out.status.success());
    let table = fs::read_to_string(Path::new(&out_dir).join("families.csv")).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("family,params,formula value,engine value,agree"));
    assert_eq!(lines.clone().count(), 1 + 2 + 4);
    assert!(lines.all(|l| l.ends_with(",true")));

    let empty = path(dir.path(), "empty");
    assert!(mcrank(&["report", "--paper-tables", "--families", "", "-o", &empty]).status.success());
    assert_eq!(fs::read_to_string(Path::new(&empty).join("families.csv")).unwrap().lines().count(), 1);
}

#[test]
fn usage_errors() {
    assert_eq!(mcrank(&["gcr", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(mcrank(&["gen", "nope"]).status.code(), Some(1));
    assert_eq!(mcrank(&["--prime", "15", "gen", "cube"]).status.code(), Some(1));
    assert_eq!(mcrank(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(mcrank(&["gen", "cube", "--format", "csv"]).status.code(), Some(1));
}
