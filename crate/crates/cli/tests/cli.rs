use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mascot(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mascot"))
        .args(args)
        .current_dir(cwd)
        .env("MASCOT_CACHE_DIR", cwd.join("cache"))
        .output()
        .unwrap()
}

/// CA-only alpha-helix trace, rotated by `turn` radians about z.
fn helix_pdb(code: &str, len: usize, turn: f64) -> String {
    let mut out = format!("HEADER    TEST{:>44}\n", code);
    for i in 0..len {
        let a = i as f64 * 100f64.to_radians();
        let (x, y, z) = (2.3 * a.cos(), 2.3 * a.sin(), 1.5 * i as f64);
        let (x, y) = (x * turn.cos() - y * turn.sin(), x * turn.sin() + y * turn.cos());
        out.push_str(&format!(
            "ATOM  {:>5}  CA  ALA A{:>4}    {:>8.3}{:>8.3}{:>8.3}  1.00  0.00           C\n",
            i + 1,
            i + 1,
            x,
            y,
            z
        ));
    }
    out.push_str("END\n");
    out
}

fn setup(dir: &Path) {
    fs::write(dir.join("1AAA.pdb"), helix_pdb("1AAA", 20, 0.0)).unwrap();
    fs::write(dir.join("2BBB.pdb"), helix_pdb("2BBB", 20, 1.0)).unwrap();
    fs::write(dir.join("3CCC.pdb"), helix_pdb("3CCC", 16, 2.0)).unwrap();
}

#[test]
fn align_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = mascot(
        &["align", "1AAA", "2BBB", "3CCC", "--pdb-dir", ".", "--out-dir", "out", "--dump-msa", "--jobs", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("centerRMSD"), "{stdout}");
    for name in ["1AAA_aligned.pdb", "2BBB_aligned.pdb", "3CCC_aligned.pdb", "report.json", "report.txt", "msa.fasta"] {
        assert!(dir.path().join("out").join(name).is_file(), "{name}");
    }
}

#[test]
fn report_format_json_only() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = mascot(
        &["align", "1AAA.pdb", "2BBB.pdb", "--out-dir", "o", "--report", "json", "--refine-rounds", "3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("o/report.json").is_file());
    assert!(!dir.path().join("o/report.txt").exists());
    let json = fs::read_to_string(dir.path().join("o/report.json")).unwrap();
    assert!(json.contains("\"refine_rounds\": 3"));
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    assert_eq!(mascot(&["align", "1AAA"], dir.path()).status.code(), Some(1));
    assert_eq!(mascot(&["align", "1AAA", "2BBB", "--report", "xml"], dir.path()).status.code(), Some(1));
    assert_eq!(mascot(&["frobnicate"], dir.path()).status.code(), Some(1));
    let out = mascot(&["align", "1AAA", "2BBB", "--pdb-dir", ".", "--threshold", "-1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(mascot(&["align", "1AAA", "1PKL:G6"], dir.path()).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    let help = mascot(&["align", "--help"], dir.path());
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("--gap-open"));
    assert_eq!(mascot(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn missing_structure_exits_2_without_outputs() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = mascot(&["align", "1AAA", "7XYZ", "--pdb-dir", ".", "--out-dir", "out"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("7XYZ"));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn unreadable_member_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    fs::write(dir.path().join("9ZZZ.pdb"), "REMARK nothing\n").unwrap();
    let out = mascot(&["align", "1AAA", "2BBB", "9ZZZ", "--pdb-dir", ".", "--out-dir", "out"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(dir.path().join("out/report.json").is_file());
}
