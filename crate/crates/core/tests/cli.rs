use std::path::PathBuf;
use std::process::{Command, Output};

fn heffter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heffter")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    heffter(args).status.code().unwrap()
}

fn tuple(m: u64, n: u64, s: u64, k: u64, t: u64) -> Vec<String> {
    [("--m", m), ("--n", n), ("--s", s), ("--k", k), ("--t", t)]
        .iter()
        .flat_map(|(f, v)| [f.to_string(), v.to_string()])
        .collect()
}

fn with<'a>(head: &'a [&'a str], rest: &'a [String]) -> Vec<&'a str> {
    head.iter().copied().chain(rest.iter().map(String::as_str)).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("heffter-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_exit_codes() {
    assert_eq!(code(&with(&["construct"], &tuple(4, 4, 4, 4, 8))), 0);
    assert_eq!(code(&with(&["construct"], &tuple(7, 7, 6, 6, 14))), 2);
    assert_eq!(code(&with(&["construct"], &tuple(4, 4, 3, 3, 8))), 64);
    assert_eq!(code(&with(&["construct"], &tuple(4, 4, 4, 4, 5))), 64);
    assert_eq!(code(&with(&["construct"], &tuple(4, 4, 4, 4, 3))), 64);
    assert_eq!(code(&["construct", "--m", "4"]), 64);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn open_case_exits_3() {
    // s = k = 2 mod 4 with m = n odd, passing every necessary condition
    let out = heffter(&with(&["construct"], &tuple(7, 7, 6, 6, 4)));
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn construct_then_verify() {
    let path = scratch("a.csv");
    let p = path.to_str().unwrap();
    assert_eq!(code(&with(&["construct", "-o", p], &tuple(6, 12, 8, 4, 24))), 0);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("# heffter-array v1"));
    assert_eq!(code(&["verify", p]), 0);
    assert_eq!(code(&["verify", p, "--mode", "simple", "--json"]), 0);

    let text = std::fs::read_to_string(&path).unwrap();
    let broken = text.replacen(",-", ",", 1);
    std::fs::write(&path, broken).unwrap();
    let out = heffter(&["verify", p]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    assert_eq!(code(&["verify", "/nonexistent/file.json"]), 64);
}

#[test]
fn search_exit_codes() {
    assert_eq!(code(&with(&["search"], &tuple(4, 4, 4, 4, 1))), 0);
    assert_eq!(code(&with(&["search", "--max-nodes", "3"], &tuple(4, 4, 4, 4, 1))), 6);
    assert_eq!(code(&with(&["search"], &tuple(4, 4, 3, 3, 8))), 5);
}

#[test]
fn sweep_report_is_reproducible() {
    let args = ["sweep", "--m", "4:8", "--n", "4:8", "--s", "4:6", "--k", "4:6", "--no-timing"];
    let a = heffter(&args);
    let b = heffter(&with(&args, &["--threads".into(), "1".into()]));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let csv = String::from_utf8(a.stdout).unwrap();
    assert!(csv.starts_with("m,n,s,k,t,branch,pass,millis\n"));
}

#[test]
fn catalog_self_test_is_clean() {
    let out = heffter(&["catalog", "--self-test"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" 0 defects"));
}
