use std::path::PathBuf;
use std::process::{Command, Output};

fn fishburn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fishburn"))
        .args(args)
        .env_remove("FISHBURN_CACHE_DIR")
        .output()
        .expect("run fishburn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn expand_prints_known_coefficients() {
    let o = fishburn(&["expand", "--family", "F1", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(15)*x^4*y"), "{text}");
    assert!(text.contains("O(deg 6)"), "{text}");
}

#[test]
fn expand_json_decodes() {
    let o = fishburn(&["--format", "json", "expand", "--family", "G1", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["ring"], "integer");
    assert_eq!(j["truncation"], 4);
    let decoded: fishburn_cli::json::SeriesJson = serde_json::from_value(j).unwrap();
    let s: fishburn_core::IntSeries = fishburn_cli::json::series_from_json(&decoded).unwrap();
    assert_eq!(s.coeff(&[1, 3]).unwrap(), 18.into());
    assert_eq!(s.coeff(&[3, 1]).unwrap(), 12.into());
}

#[test]
fn bivariate_order_budget_is_a_usage_error() {
    let o = fishburn(&["expand", "--family", "F1", "--order", "40"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("too large"));
}

#[test]
fn unknown_family_and_bad_arguments_exit_2() {
    assert_eq!(fishburn(&["expand", "--family", "H7"]).status.code(), Some(2));
    assert_eq!(fishburn(&["verify", "--id", "no-such-id"]).status.code(), Some(2));
    assert_eq!(fishburn(&["terminating", "--expr", "comp1", "--p", "1/0", "--q", "1/2"]).status.code(), Some(2));
    assert_eq!(fishburn(&["verify", "--id", "gamma1", "--gamma", "1/2"]).status.code(), Some(2));
}

#[test]
fn cache_hit_and_stale_warning() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fishburn"))
            .args(["expand", "--family", "F1", "--order", "10"])
            .env("FISHBURN_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(!stdout(&first).contains("(cached)"));
    let second = run();
    assert!(stdout(&second).contains("(cached)"));

    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    j["schema"] = 0.into();
    std::fs::write(&entry, j.to_string()).unwrap();
    let third = run();
    assert_eq!(third.status.code(), Some(0));
    assert!(!stdout(&third).contains("(cached)"));
    assert!(stderr(&third).contains("schema version 0"), "{}", stderr(&third));
    assert!(stdout(&run()).contains("(cached)"));
}

#[test]
fn negative_rational_arguments() {
    let o = fishburn(&["expand", "--family", "gamma1-lhs", "--param", "-1/2", "--param", "3", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = fishburn(&["verify", "--id", "gamma1", "--gamma", "-1/3", "--r", "-2", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn enumerate_counts() {
    let o = fishburn(&["enumerate", "--family", "fishburn", "--size", "6"]);
    assert!(stdout(&o).starts_with("fishburn matrices of size 6: 217"));
    let o = fishburn(&["--format", "json", "enumerate", "--family", "rowFishburn", "--size", "4"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["total"], "61");
    let o = fishburn(&["enumerate", "--family", "fishburn", "--size", "2", "--dump"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_json_shapes() {
    let o = fishburn(&["--format", "json", "verify", "--id", "F1=F2", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["id"], "F1=F2");
    assert_eq!(j["outcome"], "verified");
    assert_eq!(j["order"], 6);
    assert!(j.get("witness").is_none());

    let o = fishburn(&["--format", "json", "verify", "--id", "thm-main", "--order", "6"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j.as_array().unwrap().len(), 6);
}

#[test]
fn terminating_values() {
    let o = fishburn(&["terminating", "--expr", "comp2", "--p", "4", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all three = 5/8"));
    let o = fishburn(&["terminating", "--expr", "comp2", "--p", "z4^2", "--q", "z4"]);
    assert!(stdout(&o).contains("all three = 1 - 2*z4"), "{}", stdout(&o));
    let o = fishburn(&["terminating", "--expr", "comp1", "--p", "3", "--q", "3"]);
    assert_eq!(o.status.code(), Some(2), "no vanishing factor, no certificate");
}

#[test]
fn numeric_checks() {
    let o = fishburn(&["numeric", "--id", "rf", "--param", "a=0.3", "--param", "b=0.2", "--param", "t=0.4", "--param", "q=0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = fishburn(&["numeric", "--id", "watson-limit-minus-n", "--random", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = fishburn(&["numeric", "--id", "rf", "--param", "a=0.3", "--param", "b=0.2", "--param", "t=0.4", "--param", "q=1.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fishburn(&["numeric", "--id", "grf-to-rf", "--param", "a=0.3", "--param", "b=0.2", "--param", "t=0.4", "--param", "q=0.5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn watson_explicit_and_random() {
    let o = fishburn(&["watson", "--n", "3", "--a", "1/3", "--b", "1/5", "--c", "1/7", "--e", "1/11", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fishburn(&["watson", "--n", "2", "--random", "5", "--seed", "9"]);
    assert!(stdout(&o).contains("5/5 verified"));
    let o = fishburn(&["watson", "--n", "2", "--a", "1/3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn asymptotics_table() {
    let o = fishburn(&["--format", "csv", "asymptotics", "--which", "rowFishburn", "--n-max", "10"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().nth(5).unwrap().starts_with("5,380,"));
}

#[test]
fn roots_commands() {
    let o = fishburn(&["roots", "explore", "--k", "2", "--a", "1", "--b", "1", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("constant terms 3 and 3"));
    let o = fishburn(&["roots", "explore", "--k", "3", "--a", "1", "--b", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("certificate"));
    let o = fishburn(&["roots", "expand", "--k", "2", "--a", "1", "--b", "1", "--order", "2", "--expr", "comp1-mid"]);
    assert!(stdout(&o).starts_with("comp1-mid"));
    let o = fishburn(&["roots", "check", "--k", "4", "--a", "2", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fishburn(&["roots", "explore", "--k", "13", "--a", "1", "--b", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oeis_fixtures_match() {
    let o = fishburn(&["oeis-check", "--seq", "A022493", "--bfile", &data("b022493.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("21 compared, 0 mismatches"));
    let o = fishburn(&["oeis-check", "--seq", "A158691", "--bfile", &data("b158691.txt"), "--max-n", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn oeis_mismatch_and_bad_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("b.txt");
    std::fs::write(&bad, "0 1\n1 1\n2 2\n3 6\n").unwrap();
    let o = fishburn(&["oeis-check", "--seq", "A022493", "--bfile", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("3 6 5 MISMATCH"));

    std::fs::write(&bad, "0 1\n0 1\n").unwrap();
    let o = fishburn(&["oeis-check", "--seq", "A022493", "--bfile", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = fishburn(&["oeis-check", "--seq", "A000045", "--bfile", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pentagonal_reports() {
    let o = fishburn(&["pentagonal", "--order", "30", "--max-part", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2/2 verified"));
}
