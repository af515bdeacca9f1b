use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmtheta"))
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_prasad_m5() {
    let o = run(&["verify-prasad", "--m", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.trim_start().starts_with("chi=")).count(), 32);
    assert!(s.contains("chi=11111 I_chi=11111 coefficient=1 expected=1"));
}

#[test]
fn verify_prasad_unitary_lists_compositions() {
    let o = run(&["verify-prasad", "--preset", "U:4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("I=")).count(), 8);
    assert!(s.contains("8 compositions, signed sum 1, multiplicity 1"));
}

#[test]
fn verify_prasad_gl4_two_terms() {
    let o = run(&["verify-prasad", "--preset", "GL:4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("I=")).count(), 2);
    assert!(s.contains("PASS GL:4 multiplicity at chi=1"));
    assert!(s.contains("sum=1 expected=1"));
    assert!(s.contains("sum=0 expected=0"));
}

#[test]
fn verify_all_presets() {
    let o = run(&["verify-prasad", "--all-presets"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["verify-prasad"]).status.code(), Some(1));
    assert_eq!(run(&["verify-prasad", "--preset", "XY:3"]).status.code(), Some(1));
    assert_eq!(run(&["list-levis", "--preset", "GL:0"]).status.code(), Some(1));
    assert_eq!(run(&["h1", "--fixture", &fixture("malformed.json")]).status.code(), Some(1));
    assert_eq!(run(&["h1", "--fixture", &fixture("missing.json")]).status.code(), Some(1));
    let o = run(&["ortho", "volume", "--fixture", &fixture("not_orthogonal.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not an orthogonal set"));
}

#[test]
fn ortho_check_a2() {
    let o = run(&["ortho", "check", "--system", "A2", "--samples", "200", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("PASS partition of unity").count(), 2);
}

#[test]
fn ortho_volume_segment() {
    let o = run(&["ortho", "volume", "--system", "A1", "--fixture", &fixture("seg.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("volume = 4\n"));
}

#[test]
fn ortho_ehrhart_a1() {
    let o = run(&["ortho", "ehrhart", "--system", "A1", "--kmax", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.trim_start().starts_with("k=")).count(), 8);
}

#[test]
fn h1_table() {
    let h1 = |f: &str| stdout(&run(&["h1", "--fixture", &fixture(f)]));
    assert!(h1("norm_one.json").contains("H1 = Z/2\n"));
    assert!(h1("split.json").contains("H1 = trivial\n"));
    assert!(h1("induced.json").contains("H1 = trivial\n"));
}

#[test]
fn fibers_norm_one_cubed() {
    let o = run(&["fibers", "--fixture", &fixture("norm_one_cubed.json"), "--h1g", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fiber = 4\n"));
}

#[test]
fn list_levis_rows() {
    let rows = |p: &str| {
        let s = stdout(&run(&["list-levis", "--preset", p]));
        s.lines().filter(|l| l.starts_with("I=")).map(String::from).collect::<Vec<_>>()
    };
    let u3 = rows("U:3");
    assert_eq!(u3.len(), 4);
    let ker: Vec<&str> = u3.iter().map(|l| l.split("ker1=").nth(1).unwrap().split(' ').next().unwrap()).collect();
    assert_eq!(ker, ["1", "2", "2", "4"]);
    assert_eq!(rows("GL:4").len(), 2);
    assert_eq!(rows("GL:3").len(), 1);
}

#[test]
fn json_output_parses() {
    let o = run(&["--format", "json", "list-levis", "--preset", "U:3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["info"].as_array().unwrap().len(), 5);
}

#[test]
fn reports_are_deterministic() {
    let dir = std::env::temp_dir();
    let args = ["ortho", "check", "--system", "B2", "--samples", "50", "--seed", "11"];
    let mut outs = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("gmtheta-det-{}-{i}.txt", std::process::id()));
        let p = path.to_string_lossy().into_owned();
        let mut a: Vec<&str> = args.to_vec();
        a.extend(["--output", &p]);
        assert_eq!(run(&a).status.code(), Some(0));
        outs.push(std::fs::read(&path).unwrap());
        std::fs::remove_file(&path).unwrap();
    }
    assert_eq!(outs[0], outs[1]);
}
