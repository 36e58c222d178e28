//! The command-line tool: printed values, exit codes, fault injection,
//! caching and byte-stable reports.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mgn-euler"));
    c.env_remove("MGN_EULER_CACHE").env_remove("MGN_EULER_FAULT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(tag: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("mgn-euler-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn single_values() {
    for (args, want) in [
        (&["chi-bar", "1", "1"][..], "5/12"),
        (&["e-bar", "2", "0"][..], "6"),
        (&["chi-open", "0", "3"][..], "1"),
        (&["e-open", "3", "2"][..], "8"),
        (&["chi-bar", "2", "0", "--route", "wick"][..], "119/1440"),
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn all_routes_print_each_route() {
    let o = run(&["e-bar", "1", "2", "--all-routes"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "genfun 4\ndirect 4\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["chi-open", "0", "2"][..],
        &["e-bar", "1", "1", "--route", "wick"][..],
        &["e-bar", "5", "5", "--lmax", "4"][..],
        &["chi-bar", "one", "1"][..],
        &["no-such-command"][..],
        &["verify", "sometimes"][..],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_quick_passes_and_fault_is_named() {
    let o = run(&["verify", "quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));

    let o = bin()
        .args(["verify", "quick", "--format", "json"])
        .env("MGN_EULER_FAULT", "bernoulli")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["ok"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"bernoulli"), "{failed:?}");
}

#[test]
fn table1_reports_are_byte_stable() {
    let a = run(&["table1", "--format", "md"]);
    let b = run(&["table1", "--format", "md"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("0 differences"));

    let csv = run(&["table1", "--format", "csv"]);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("g,n,kind,value,route"));
    assert_eq!(lines.count(), 64);
    assert!(text.contains("10,9,e-open,1666295400720,branch-data"));
}

#[test]
fn table2_json_cold_and_warm_cache_agree() {
    let dir = scratch("t2");
    let out1 = dir.join("cold.json");
    let out2 = dir.join("warm.json");
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("cache");
    let o = bin()
        .args(["table2", "--format", "json", "--out", out1.to_str().unwrap()])
        .env("MGN_EULER_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_dir(&cache).unwrap().count() >= 21);
    // The environment variable wins over --cache-dir.
    let o = bin()
        .args([
            "table2",
            "--format",
            "json",
            "--out",
            out2.to_str().unwrap(),
            "--cache-dir",
            "/nonexistent/x",
        ])
        .env("MGN_EULER_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let a = std::fs::read(&out1).unwrap();
    assert_eq!(a, std::fs::read(&out2).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 21);
    assert_eq!(v["cells"][0]["value"], "6");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn audit_dumps() {
    let dir = scratch("dump");
    let d = dir.to_str().unwrap();
    assert_eq!(run(&["chi-bar", "2", "0", "--emit-graphs", d]).status.code(), Some(0));
    let cat: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.join("graphs_2_0.json")).unwrap()).unwrap();
    assert_eq!(cat["classes"].as_array().unwrap().len(), 7);

    assert_eq!(run(&["e-open", "3", "2", "--emit-cover-data", d]).status.code(), Some(0));
    assert!(Path::new(&dir.join("branch_data_3_2.json")).exists());
    assert_eq!(run(&["e-bar", "1", "2", "--emit-cover-data", d]).status.code(), Some(0));
    assert!(Path::new(&dir.join("skeletons_1_2.json")).exists());
    assert_eq!(run(&["chi-open", "1", "1", "--emit-cover-data", d]).status.code(), Some(2));

    let o = run(&["graphs", "1", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
