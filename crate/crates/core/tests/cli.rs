use std::process::{Command, Output};

fn snowflake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snowflake"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn reduce_prints_normal_form() {
    let o = snowflake(&["reduce", "S a s"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "a^2 b");
    let o = snowflake(&["reduce", "a A"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn equal_and_not_equal() {
    let o = snowflake(&["equal", "S a s", "a a b"]);
    assert_eq!(o.status.code(), Some(0));
    let o = snowflake(&["equal", "a", "b"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "not equal");
}

#[test]
fn conjugacy_verdicts() {
    let o = snowflake(&["conjugate", "a", "b"]);
    assert_eq!(o.status.code(), Some(1));
    let o = snowflake(&["conjugate", "a a b", "S a s"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("conjugate\n"));
    let o = snowflake(&["conjugate", "s a t b", "t b s a", "--eta-search"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn zexp_and_cl() {
    let o = snowflake(&["zexp", "B H b h"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim().trim_start_matches('-'), "1");
    let o = snowflake(&["cl", "b", "b z^8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("length: 8"), "{text}");
    let o = snowflake(&["--group", "bpq", "cl", "b", "b"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn snowflake_word_report() {
    let o = snowflake(&["snowflake", "4"]);
    let text = stdout(&o);
    assert!(text.starts_with("S a s T a t\n"), "{text}");
    assert!(text.contains("length: 6"));
    assert!(text.contains("evaluates to a^4: true"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(snowflake(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(snowflake(&["reduce", "h"]).status.code(), Some(2));
    assert_eq!(snowflake(&["--p", "1", "--q", "2", "reduce", "a"]).status.code(), Some(2));
}

#[test]
fn experiments_write_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cl.csv");
    let o = snowflake(&["--out", csv.to_str().unwrap(), "exp-cl", "2", "3", "4", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,input_len,conj_len,ok\n"));
    assert!(text.contains("\n4,"));
    let svg = dir.path().join("fit.svg");
    let o = snowflake(&[
        "--out",
        svg.to_str().unwrap(),
        "--window",
        "all",
        "fit",
        csv.to_str().unwrap(),
        "--x",
        "n",
        "--y",
        "conj_len",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("slope: 3.000000"), "{}", stdout(&o));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let o = snowflake(&["--cap", "6", "exp-distortion", "3", "4", "64"]);
    assert_eq!(stdout(&o), "N,len,bound,bfs_len\n3,3,7,3\n4,6,7,4\n64,36,49,\n");
}

#[test]
fn ball_dump_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.bin");
    let o = snowflake(&["--out", path.to_str().unwrap(), "ball", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("radius 0: 1\nradius 1: 8\n"), "{text}");
    let dump = snowflake_core::oracle::read_dump(std::fs::File::open(&path).unwrap()).unwrap();
    let total: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("total: "))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(dump.pairs.len(), total);
}
