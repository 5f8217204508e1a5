// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dmnr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmnr")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes a labeled synthetic frame `<stem>.bin` / `<stem>.label` into two dirs.
fn labeled_frame(root: &Path, stem: &str, seed: u64) -> (PathBuf, PathBuf) {
    let points = root.join("velodyne");
    let labels = root.join("labels");
    std::fs::create_dir_all(&points).unwrap();
    std::fs::create_dir_all(&labels).unwrap();
    let out = dmnr(&[
        "synth",
        "--points",
        "2000",
        "--seed",
        &seed.to_string(),
        "--out-points",
        s(&points.join(format!("{stem}.bin"))),
        "--out-labels",
        s(&labels.join(format!("{stem}.label"))),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    (points, labels)
}

#[test]
fn filter_writes_mask_and_ply() {
    let dir = tempfile::tempdir().unwrap();
    let (points, _) = labeled_frame(dir.path(), "000000", 1);
    let frame = points.join("000000.bin");
    for algo in ["dmnr", "dmnr-h", "sor", "ror"] {
        let mask = dir.path().join(format!("{algo}.mask"));
        let ply = dir.path().join(format!("{algo}.ply"));
        let out = dmnr(&[
            "filter",
            "-i",
            s(&frame),
            "--algo",
            algo,
            "--out-mask",
            s(&mask),
            "--out-ply",
            s(&ply),
        ]);
        assert_eq!(code(&out), 0, "{algo}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(std::fs::metadata(&mask).unwrap().len(), 2000);
        assert!(std::fs::read(&ply).unwrap().starts_with(b"ply\n"));
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(stdout.contains("points 2000"), "{stdout}");
    }
}

#[test]
fn directory_filter_writes_one_mask_per_frame() {
    let dir = tempfile::tempdir().unwrap();
    let (points, _) = labeled_frame(dir.path(), "000000", 1);
    labeled_frame(dir.path(), "000001", 2);
    let out_dir = dir.path().join("masks");
    let out = dmnr(&["filter", "-i", s(&points), "--out-dir", s(&out_dir), "--ply"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for stem in ["000000", "000001"] {
        assert!(out_dir.join(format!("{stem}.mask")).is_file());
        assert!(out_dir.join(format!("{stem}.ply")).is_file());
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let (points, labels) = labeled_frame(dir.path(), "000000", 1);
    let frame = points.join("000000.bin");
    assert_eq!(code(&dmnr(&["filter", "-i", s(&frame), "--algo", "bogus"])), 1);
    assert_eq!(code(&dmnr(&["filter"])), 1);
    assert_eq!(code(&dmnr(&["filter", "-i", s(&frame), "--K", "0"])), 1);
    assert_eq!(code(&dmnr(&["filter", "-i", s(&frame), "--h1", "50"])), 1);
    assert_eq!(code(&dmnr(&["evaluate", s(&points), s(&labels)])), 1);

    let bad_config = dir.path().join("bad.toml");
    std::fs::write(&bad_config, "colour = 3\n").unwrap();
    assert_eq!(code(&dmnr(&["filter", "-i", s(&frame), "--config", s(&bad_config)])), 1);

    assert_eq!(code(&dmnr(&["--help"])), 0);
}

#[test]
fn short_label_file_exits_two_and_names_the_frame() {
    let dir = tempfile::tempdir().unwrap();
    let (points, labels) = labeled_frame(dir.path(), "000000", 1);
    labeled_frame(dir.path(), "000007", 2);
    let label = labels.join("000007.label");
    let bytes = std::fs::read(&label).unwrap();
    std::fs::write(&label, &bytes[..bytes.len() - 4]).unwrap();
    let out = dmnr(&["evaluate", s(&points), s(&labels), "--noise-ids", "110"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("000007"), "{err}");
    assert!(err.contains("length mismatch"), "{err}");
}

#[test]
fn missing_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&dmnr(&["filter", "-i", s(&dir.path().join("nope.bin"))])), 2);
    let odd = dir.path().join("odd.bin");
    std::fs::write(&odd, [0u8; 17]).unwrap();
    assert_eq!(code(&dmnr(&["filter", "-i", s(&odd)])), 2);
}

#[test]
fn evaluate_report_is_deterministic_and_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let (points, labels) = labeled_frame(dir.path(), "000000", 3);
    labeled_frame(dir.path(), "000001", 4);
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../config/default.toml");

    let run = |name: &str, extra: &[&str]| {
        let report = dir.path().join(format!("{name}.json"));
        let csv = dir.path().join(format!("{name}.csv"));
        let mut args = vec![
            "evaluate",
            s(&points),
            s(&labels),
            "--config",
            s(&config),
            "--algo",
            "dmnr-h",
            "--report",
            s(&report),
            "--csv",
            s(&csv),
        ];
        args.extend_from_slice(extra);
        let out = dmnr(&args);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        (
            std::fs::read_to_string(report).unwrap(),
            std::fs::read_to_string(csv).unwrap(),
        )
    };
    let (a, csv) = run("a", &[]);
    let (b, _) = run("b", &[]);
    assert_eq!(a, b);
    assert!(a.contains("\"averaging\": \"micro\""));
    assert!(a.contains("\"filter\": \"dmnr-h\""));
    assert!(csv.starts_with("frame,precision,recall,f1\n"));
    assert!(csv.lines().last().unwrap().starts_with("ALL,"));

    let (c, _) = run("c", &["--k1", "0.5"]);
    assert!(c.contains("\"k1\": 0.5"));
}

#[test]
fn export_colors_ground_truth_mask() {
    let dir = tempfile::tempdir().unwrap();
    let frame = dir.path().join("f.bin");
    let truth = dir.path().join("t.mask");
    let ply = dir.path().join("t.ply");
    let out = dmnr(&[
        "synth",
        "--points",
        "500",
        "--clutter-fraction",
        "0.1",
        "--out-points",
        s(&frame),
        "--out-truth",
        s(&truth),
    ]);
    assert_eq!(code(&out), 0);
    let out = dmnr(&[
        "export",
        "-i",
        s(&frame),
        "--mask",
        s(&truth),
        "--out",
        s(&ply),
        "--ply-format",
        "ascii",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&ply).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with("255 0 0")).count(), 50);

    let short = dir.path().join("short.mask");
    std::fs::write(&short, [0u8; 10]).unwrap();
    assert_eq!(
        code(&dmnr(&[
            "export",
            "-i",
            s(&frame),
            "--mask",
            s(&short),
            "--out",
            s(&ply)
        ])),
        2
    );
}
