use std::path::Path;
use std::process::{Command, Output};

fn uca(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uca"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("UCA_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&uca(dir.path(), &["sweep", "--spacings", ""])), 2);
    assert_eq!(code(&uca(dir.path(), &["frobnicate"])), 2);
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "n = 2\nwobble = 3\n").unwrap();
    let o = uca(dir.path(), &["--config", cfg.to_str().unwrap(), "modes"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("wobble"));
}

#[test]
fn malformed_impedance_file_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("z.csv");
    std::fs::write(&f, "# n = 2\n# spacing = 0.25\n# unit = relative\nf_rel,re_z11,im_z11,re_z12,im_z12\n1.0,73,x,1,2\n").unwrap();
    let o = uca(dir.path(), &["fit", f.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn fixture_modes_report_lists_both_modes() {
    let dir = tempfile::tempdir().unwrap();
    let o = uca(dir.path(), &["modes", "--fixture", "table1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("modes.csv")).unwrap();
    let rows: Vec<_> = csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains("118.76") && rows[1].contains("28.31"));
    assert!(dir.path().join("modes.json").exists());
}

#[test]
fn fixture_file_round_trips_through_fit() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("t1.csv");
    assert_eq!(code(&uca(dir.path(), &["fixture", "--output", f.to_str().unwrap()])), 0);
    let o = uca(dir.path(), &["fit", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("fit.json")).unwrap()).unwrap();
    let text = json.to_string();
    assert!(text.contains("118.7") && text.contains("28.3"), "{text}");
}

#[test]
fn capacity_output_is_reproducible_and_worker_independent() {
    let run = |workers: &str| {
        let dir = tempfile::tempdir().unwrap();
        let o = uca(dir.path(), &["--seed", "7", "--realizations", "300", "--workers", workers, "capacity", "--spacing", "0.5"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        (
            std::fs::read(dir.path().join("capacity.csv")).unwrap(),
            std::fs::read(dir.path().join("capacity.json")).unwrap(),
        )
    };
    let a = run("1");
    assert_eq!(a, run("1"));
    assert_eq!(a, run("8"));
    let other = {
        let dir = tempfile::tempdir().unwrap();
        uca(dir.path(), &["--seed", "8", "--realizations", "300", "capacity", "--spacing", "0.5"]);
        std::fs::read(dir.path().join("capacity.csv")).unwrap()
    };
    assert_ne!(a.0, other);
}
