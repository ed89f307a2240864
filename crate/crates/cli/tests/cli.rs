use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn rmq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_single_cell() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("a.txt");
    let o = rmq(&["gen", "--m", "1", "--n", "1", "--seed", "5", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap().trim_end(), "1 1\n0");
}

#[test]
fn gen_is_deterministic_and_parses() {
    let a = rmq(&["gen", "--m", "2", "--n", "3", "--seed", "7"]);
    let b = rmq(&["gen", "--m", "2", "--n", "3", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let m: rmq_core::RankMatrix = stdout(&a).parse().unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 3));
}

#[test]
fn encode_then_query_full_array() {
    let dir = tempdir().unwrap();
    let mat = dir.path().join("a.txt");
    fs::write(&mat, "2 3\n1 3 0\n2 4 5\n").unwrap();
    for scheme in ["STACKED", "REGION4", "GRID", "TWOXN7", "TWOXN5", "ONESIDED", "TWOSIDED", "REGION3"] {
        let enc = dir.path().join(format!("{scheme}.rmqe"));
        let o = rmq(&["encode", "--scheme", scheme, "--in", mat.to_str().unwrap(), "--out", enc.to_str().unwrap()]);
        assert!(o.status.success(), "{scheme}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(&fs::read(&enc).unwrap()[..4], b"RMQE");
        let o = rmq(&["query", "--in", enc.to_str().unwrap(), "--query", "1,2,1,3"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), "2 3", "{scheme}");
    }
}

#[test]
fn decode_lists_every_query() {
    let dir = tempdir().unwrap();
    let mat = dir.path().join("a.txt");
    let enc = dir.path().join("a.rmqe");
    fs::write(&mat, "1 3\n2 1 0\n").unwrap();
    rmq(&["encode", "--scheme", "types", "--in", mat.to_str().unwrap(), "--out", enc.to_str().unwrap()]);
    let o = rmq(&["decode", "--in", enc.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"TYPES,1,3,1,1,2,3,1,2"));
}

#[test]
fn sidedness_violation_is_usage_error() {
    let dir = tempdir().unwrap();
    let mat = dir.path().join("a.txt");
    let enc = dir.path().join("a.rmqe");
    fs::write(&mat, "2 3\n1 3 0\n2 4 5\n").unwrap();
    rmq(&["encode", "--scheme", "TWOSIDED", "--in", mat.to_str().unwrap(), "--out", enc.to_str().unwrap()]);
    let o = rmq(&["query", "--in", enc.to_str().unwrap(), "--query", "1,2,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wrong_height_and_bad_flags_are_usage_errors() {
    let dir = tempdir().unwrap();
    let mat = dir.path().join("a.txt");
    fs::write(&mat, "2 2\n0 1\n2 3\n").unwrap();
    let out = dir.path().join("x.rmqe");
    let o = rmq(&["encode", "--scheme", "THREEROW", "--in", mat.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(rmq(&["verify", "--scheme", "nope", "--m", "2", "--n", "2"]).status.code(), Some(2));
    assert_eq!(rmq(&["measure", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn malformed_container_fails() {
    let dir = tempdir().unwrap();
    let enc = dir.path().join("bad.rmqe");
    fs::write(&enc, b"RMQX\x01\x03\x02\x02\x00").unwrap();
    let o = rmq(&["query", "--in", enc.to_str().unwrap(), "--query", "1,1,1,1"]);
    assert!(!o.status.success());
}

#[test]
fn verify_stacked() {
    let o = rmq(&["verify", "--scheme", "STACKED", "--m", "2", "--n", "8", "--trials", "500", "--seed", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "STACKED,2,8,500,1,54000,0");
}

#[test]
fn verify_all_covers_every_scheme() {
    let o = rmq(&["verify", "--scheme", "all", "--m", "4", "--n", "6", "--trials", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for scheme in rmq_core::Scheme::ALL {
        assert!(text.lines().any(|l| l.starts_with(&format!("{scheme},")) && l.ends_with(",0")), "{scheme}");
    }
}

#[test]
fn classes_rows() {
    let o = rmq(&["classes", "--m", "2", "--n", "3"]);
    assert_eq!(stdout(&o), "m,n,classes,log2_classes\n2,3,200,7.643856\n");
    assert_eq!(rmq(&["classes", "--m", "2", "--n", "5"]).status.code(), Some(4));
}

#[test]
fn constants_maximum() {
    let o = rmq(&["constants", "--terms", "1000", "--nmax", "4"]);
    let text = stdout(&o);
    assert!(text.contains("f,0.20,2.321928095"));
    assert!(text.lines().any(|l| l == "f_max,0.20,2.321928095"));
    assert!(text.lines().any(|l| l == "S,1,0.000000"));
    assert!(text.lines().any(|l| l == "S,2,1.000000"));
}

#[test]
fn measure_offsets_near_expectation() {
    let o = rmq(&["measure", "--scheme", "OFFSETS", "--m", "1", "--n", "1024", "--trials", "2000", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..5], ["OFFSETS", "1", "1024", "2000", "3"]);
    let (mean, std): (f64, f64) = (row[5].parse().unwrap(), row[6].parse().unwrap());
    let s = rmq_core::cartesian::expected_offset_bits(1024);
    let se = std / 2000f64.sqrt();
    assert!(mean >= s - 3.0 * se && mean <= s + 1.0 + 3.0 * se, "{mean} vs {s}");
}

#[test]
fn grid_components() {
    let o = rmq(&["measure", "--scheme", "GRID", "--m", "8", "--n", "8", "--trials", "3", "--components"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("scheme,m,n,trials,seed,component,bits\n"));
    assert!(text.lines().any(|l| l.starts_with("GRID,8,8,3,0,total,")));
    let o = rmq(&["measure", "--scheme", "REGION4", "--m", "8", "--n", "8", "--components"]);
    assert_eq!(o.status.code(), Some(2));
}
