use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn agfft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agfft")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn values(text: &str) -> Vec<u64> {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| l.trim().parse().unwrap()).collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn encode_unencode_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let msg = dir.path().join("msg.txt");
    let cw = dir.path().join("cw.txt");
    let back = dir.path().join("back.txt");
    let cw2 = dir.path().join("cw2.txt");
    let back2 = dir.path().join("back2.txt");
    let original: Vec<u64> = (0..55).map(|i| (i * 7 + 3) % 16).collect();
    let body: String = original.iter().map(|v| format!("{v}\n")).collect();
    fs::write(&msg, format!("# a random message\n{body}")).unwrap();
    let o = agfft(&["encode", "--kappa", "4", "--in", s(&msg), "--out", s(&cw)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(values(&fs::read_to_string(&cw).unwrap()).len(), 64);
    assert_eq!(code(&agfft(&["unencode", "--kappa", "4", "--verify", "--in", s(&cw), "--out", s(&back)])), 0);
    let decoded = fs::read_to_string(&back).unwrap();
    assert_eq!(values(&decoded), original);
    assert_eq!(code(&agfft(&["encode", "--kappa", "4", "--in", s(&back), "--out", s(&cw2)])), 0);
    assert_eq!(fs::read(&cw).unwrap(), fs::read(&cw2).unwrap());
    assert_eq!(code(&agfft(&["unencode", "--kappa", "4", "--in", s(&cw2), "--out", s(&back2)])), 0);
    assert_eq!(fs::read(&back).unwrap(), fs::read(&back2).unwrap());
}

#[test]
fn zero_message_gives_zero_codeword() {
    let dir = tempfile::tempdir().unwrap();
    let msg = dir.path().join("zero.txt");
    fs::write(&msg, "0\n".repeat(50)).unwrap();
    let o = agfft(&["encode", "--kappa", "4", "--form", "kummer", "--in", s(&msg)]);
    assert_eq!(code(&o), 0);
    assert_eq!(values(&String::from_utf8(o.stdout).unwrap()), vec![0; 60]);
}

#[test]
fn bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let msg = dir.path().join("short.txt");
    fs::write(&msg, "1\n2\n3\n").unwrap();
    let o = agfft(&["encode", "--kappa", "4", "--in", s(&msg)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"), "{}", String::from_utf8_lossy(&o.stderr));
    fs::write(&msg, "1\nseven\n").unwrap();
    let o = agfft(&["encode", "--kappa", "4", "--in", s(&msg)]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&agfft(&["info", "--kappa", "6"])), 2);
    assert_eq!(code(&agfft(&["info", "--curve", "tower", "--kappa", "8", "--n", "5"])), 2);
    assert_eq!(code(&agfft(&["info", "--kappa", "4", "--lambda", "64"])), 2);
    assert_eq!(code(&agfft(&["info", "--bogus"])), 2);
}

#[test]
fn corrupted_codeword_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let msg = dir.path().join("msg.txt");
    let cw = dir.path().join("cw.txt");
    fs::write(&msg, "5\n".repeat(55)).unwrap();
    assert_eq!(code(&agfft(&["encode", "--kappa", "4", "--in", s(&msg), "--out", s(&cw)])), 0);
    let text = fs::read_to_string(&cw).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let v: u64 = lines[3].parse().unwrap();
    lines[3] = ((v + 1) % 16).to_string();
    fs::write(&cw, lines.join("\n") + "\n").unwrap();
    assert_eq!(code(&agfft(&["unencode", "--kappa", "4", "--verify", "--in", s(&cw)])), 3);
    assert_eq!(code(&agfft(&["unencode", "--kappa", "4", "--in", s(&cw)])), 0);
}

#[test]
fn info_and_verify_reports() {
    let o = agfft(&["info", "--curve", "tower", "--kappa", "8", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], 4096);
    assert_eq!(v["genus"], 504);
    let o = agfft(&["verify", "--curve", "hermitian", "--kappa", "4", "--trials", "100", "--seed", "9"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["weight_violations"], 0);
    let again = agfft(&["verify", "--curve", "hermitian", "--kappa", "4", "--trials", "100", "--seed", "9"]);
    assert_eq!(o.stdout, again.stdout);
    let o = agfft(&["verify", "--curve", "tower", "--kappa", "8", "--n", "3", "--trials", "5"]);
    assert_eq!(code(&o), 0);
    let o = agfft(&["verify", "--curve", "norm-trace-y", "--kappa", "2", "--r", "3", "--e", "7", "--trials", "20"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn bench_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.csv");
    let o = agfft(&["bench", "--curve", "hermitian", "--sizes", "4,8,16", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("curve,N,lambda,field_muls,field_adds,wall_ns,muls_per_nlogn"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    let ratios: Vec<f64> = rows.iter().filter(|r| r[0].ends_with(":fmpe")).map(|r| r[6].parse().unwrap()).collect();
    let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(hi / lo <= 2.5);
    // N = 32768 exceeds the naive cap
    let o = agfft(&["bench", "--curve", "hermitian", "--sizes", "32"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(!text.contains(":naive"));
    assert_eq!(code(&agfft(&["bench", "--sizes", "6"])), 2);
}
