use std::process::{Command, Output};

fn qshelf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qshelf"))
        .args(args)
        .env_remove("QSHELF_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_small_grid_passes() {
    let o = qshelf(&[
        "verify", "--suite", "gga", "--k-max", "3", "--order", "20", "--j-max", "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("fail=0"));
}

#[test]
fn json_is_deterministic_across_parallelism() {
    let base = [
        "verify", "--suite", "matrices", "--k-max", "3", "--order", "16", "--j-max", "3",
        "--big-j", "0,1", "--format", "json",
    ];
    let a = qshelf(&[&base[..], &["--parallelism", "1"]].concat());
    let b = qshelf(&[&base[..], &["--parallelism", "4"]].concat());
    let c = qshelf(&[&base[..], &["--parallelism", "4"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let w: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(v["results"].to_string(), w["results"].to_string());
    assert_eq!(v["summary"], w["summary"]);
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["config", "results", "summary"]);
    assert!(v["results"][0].get("elapsed").is_none());
}

#[test]
fn corrupted_recursion_exits_one() {
    let o = qshelf(&[
        "verify",
        "--suite",
        "gga",
        "--k-max",
        "2",
        "--order",
        "20",
        "--j-max",
        "2",
        "--corrupt-recursion",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<_> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r["first_discrepancy"].is_object()));
}

#[test]
fn invalid_parameters_exit_two() {
    assert_eq!(qshelf(&["verify", "--k-min", "1"]).status.code(), Some(2));
    assert_eq!(qshelf(&["verify", "--order", "-1"]).status.code(), Some(2));
    assert_eq!(
        qshelf(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(qshelf(&["series", "--what", "nope"]).status.code(), Some(2));
    assert_eq!(
        qshelf(&["partitions", "--k", "2", "--i", "5", "--n", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qshelf"))
        .args(["series", "--what", "closed-form", "--k", "2", "--i", "1"])
        .env("QSHELF_ORDER", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = qshelf::Series::parse_dump(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(s.precision(), 6);
}

#[test]
fn series_dump_parses() {
    // partitions into distinct parts differing by at least 2
    let o = qshelf(&[
        "series", "--what", "genfun", "--family", "gordon", "--k", "2", "--i", "1", "--order", "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = qshelf::Series::parse_dump(&stdout(&o)).unwrap();
    let p: Vec<i64> = s
        .coeffs()
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect();
    assert_eq!(p, [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]);
}

#[test]
fn partitions_dump() {
    // gordon k=2 i=1: parts differ by at least 2
    let o = qshelf(&[
        "partitions",
        "--family",
        "gordon",
        "--k",
        "2",
        "--i",
        "1",
        "--n",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8\n7,1\n6,2\n5,3\n");
}
