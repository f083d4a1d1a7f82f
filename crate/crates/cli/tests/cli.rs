use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn modrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrep")).args(args).env_remove("MODREP_CACHE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn core_example() {
    let o = modrep(&["core", "--p", "2", "--partition", "4,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"core\":\"-\",\"weight\":3}\n");
    let o = modrep(&["core", "--p", "3", "--partition", "4,2"]);
    assert_eq!(stdout(&o), "{\"core\":\"4,2\",\"weight\":0}\n");
    let o = modrep(&["core", "--p", "5", "--partition", "-"]);
    assert_eq!(stdout(&o), "{\"core\":\"-\",\"weight\":0}\n");
}

#[test]
fn predict_example() {
    let o = modrep(&["predict", "--p", "2", "--n", "6", "--second", "2"]);
    assert_eq!(stdout(&o), "{\"value\":2,\"rule\":\"ThmA_ii\"}\n");
    let o = modrep(&["predict", "--p", "3", "--n", "12", "--second", "6"]);
    assert_eq!(lines(&o)[0]["rule"], "dim_shortcut");
}

#[test]
fn table_commands() {
    assert_eq!(lines(&modrep(&["psi", "--p", "2", "--n", "6", "--k", "2", "--s", "1"]))[0]["value"], 1);
    assert_eq!(lines(&modrep(&["psi", "--p", "2", "--n", "5", "--k", "2", "--s", "1"]))[0]["value"], 0);
    assert_eq!(lines(&modrep(&["phi", "--p", "3", "--n", "7", "--k", "1", "--s", "0"]))[0]["value"], 1);
    assert_eq!(lines(&modrep(&["dim-specht", "--n", "6", "--second", "2"]))[0]["dim"], 9);
    assert_eq!(lines(&modrep(&["dim-simple", "--p", "2", "--n", "5", "--second", "2"]))[0]["dim"], 4);
    let f = lines(&modrep(&["decompose", "--p", "3", "--n", "7", "--second", "2"]));
    let mut factors: Vec<&str> = f[0]["factors"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    factors.sort();
    assert_eq!(factors, vec!["5,2", "7"]);
    let m = lines(&modrep(&["mbr", "--p", "5", "--partition", "4,2"]));
    assert_eq!(m[0]["factors"], serde_json::json!(["3,2", "4,1"]));
    let e = lines(&modrep(&["expand", "--p", "2", "--partition", "4,2"]));
    assert_eq!(e[0]["expansion"], serde_json::json!(["-", "2,1"]));
}

#[test]
fn precondition_errors_exit_one() {
    let o = modrep(&["mbr", "--p", "3", "--partition", "4,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not covered"));
    let o = modrep(&["dim-simple", "--p", "2", "--n", "4", "--second", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = modrep(&["core", "--p", "4", "--partition", "4,2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = modrep(&["complexity", "--p", "5", "--module", "D:10,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
    // usage errors name the flag
    let o = modrep(&["core", "--p", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--partition"));
    let o = modrep(&["nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn subgroups_and_fixed_tabloids() {
    let s = lines(&modrep(&["subgroups", "--p", "2", "--n", "6"]));
    assert_eq!(s.len(), 2);
    assert!(s.iter().all(|l| l["rank"] == 3));
    let tsv = stdout(&modrep(&["--format", "tsv", "subgroups", "--p", "3", "--n", "7"]));
    let rows: Vec<&str> = tsv.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("index\tclass\trank"));
    let k = lines(&modrep(&["subgroups", "--p", "2", "--n", "4", "--subgroup", "KF:1"]));
    assert_eq!(k[0]["orbit_sizes"], serde_json::json!([4]));
    assert_eq!(lines(&modrep(&["fixed-tabloids", "--p", "2", "--partition", "2,2", "--subgroup", "E:2"]))[0]["count"], 2);
    assert_eq!(lines(&modrep(&["fixed-tabloids", "--p", "2", "--partition", "3,1", "--subgroup", "E:2"]))[0]["count"], 0);
}

#[test]
fn jordan_commands() {
    let g = lines(&modrep(&["generic-jordan", "--p", "2", "--module", "M:2,2", "--subgroup", "E:2"]));
    assert_eq!(g[0]["jordan"], "1^2 2^2");
    assert_eq!(g[0]["stable"], "1^2");
    assert!(g[0]["certificate"]["failure_bound"].as_f64().unwrap() <= 2f64.powi(-40));
    let i = lines(&modrep(&["insertion", "--p", "3", "--u", "2^1", "--v", "2^1 3^1", "--oracle"]));
    assert_eq!(i[0]["quotients"], serde_json::json!(["3^1", "1^1 2^1"]));
    assert_eq!(i[0]["agree"], true);
}

#[test]
fn rank_variety_and_complexity() {
    let r = lines(&modrep(&["rank-variety-dim", "--p", "2", "--module", "D:4,2", "--subgroup", "maximal:0", "--exts", "2,4"]));
    assert_eq!(r[0]["dim_estimate"], 1);
    assert_eq!(r[0]["consistent"], true);
    assert!(r[0]["fields"][0]["modulus"].is_array());
    let c = lines(&modrep(&["complexity", "--p", "2", "--module", "D:4,2"]));
    assert_eq!(c[0]["computed"], 2);
    assert_eq!(c[0]["class_dims"], serde_json::json!([1, 2]));
    assert_eq!(c[0]["verdict"], "match");
    let c = lines(&modrep(&["complexity", "--p", "3", "--module", "D:5,1"]));
    assert_eq!(c[0]["verdict"], "shortcut_used");
    let forced = lines(&modrep(&["complexity", "--p", "3", "--module", "D:5,1", "--no-shortcut"]));
    assert_eq!(forced[0]["computed"], c[0]["computed"]);
    let d = lines(&modrep(&["complexity", "--p", "2", "--module", "D:3,2", "--detail"]));
    assert_eq!(d[0]["classes"].as_array().unwrap().len(), 2);
    assert_eq!(d[0]["computed"], 1);
}

#[test]
fn verify_stream_ends_with_mismatch_count() {
    let o = modrep(&["verify", "--suite", "theorem-a", "--p", "2", "--n-max", "6"]);
    assert!(o.status.success());
    let l = lines(&o);
    assert_eq!(l.last().unwrap(), &serde_json::json!({ "mismatches": 0 }));
    assert!(l[..l.len() - 1].iter().all(|r| r["verdict"] == "match"));
    assert_eq!(stdout(&o).lines().last(), Some("{\"mismatches\":0}"));
    let o = modrep(&["verify", "--suite", "theorem-c", "--p", "2", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["complexity", "--p", "2", "--module", "D:6,2", "--no-shortcut", "--seed", "7", "--detail"];
    let a = modrep(&args);
    let b = modrep(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"seed\":7"));
    assert!(stdout(&a).contains("\"modulus\""));
}

#[test]
fn cache_round_trip_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let args = ["verify", "--suite", "theorem-a", "--p", "2", "--n-max", "6", "--cache", p];
    let first = modrep(&args);
    assert!(first.status.success());
    let stored = std::fs::read_to_string(&path).unwrap();
    assert!(stored.lines().count() >= 6);
    for line in stored.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["op"], "class-dim");
        assert!(v["value"].is_u64());
    }
    let second = modrep(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stored, "hits are not rewritten");

    // the environment variable wins over the flag
    let env_path = dir.path().join("env.jsonl");
    let o = Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(["complexity", "--p", "2", "--module", "D:4,2", "--cache", p])
        .env("MODREP_CACHE", &env_path)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&env_path).unwrap().contains("D:4,2"));
}

#[test]
fn corrupted_cache_entry_yields_exit_two() {
    // a wrong stored dimension must surface as a mismatch, not be hidden
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let args = ["verify", "--suite", "theorem-a", "--p", "2", "--n-min", "6", "--n-max", "6", "--seconds", "2", "--cache", p];
    assert!(modrep(&args).status.success());
    let stored = std::fs::read_to_string(&path).unwrap();
    let mut f = std::fs::OpenOptions::new().append(true).open(&path).unwrap();
    for line in stored.lines() {
        let mut v: Value = serde_json::from_str(line).unwrap();
        v["value"] = 0.into();
        writeln!(f, "{v}").unwrap();
    }
    drop(f);
    let o = modrep(&args);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(lines(&o).last().unwrap()["mismatches"], 1);
}
