use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.display().to_string()
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_weakmodel")).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn lib(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weakmodel").chain(args.iter().copied());
    let code = weakmodel::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn binary_and_library_entry_points_agree() {
    let f = fixture("fig5a_p.wm");
    for args in [
        vec!["--machine", "analyze", &f],
        vec!["--machine", "mc", &f, "--recurrence", "a", "--entropy-rate"],
        vec!["track", &f, "--colors", "B,R,B", "--enumerate", "5"],
        vec!["--machine", "growth", &f, "--t-max", "6"],
    ] {
        let a = bin(&args);
        assert_eq!(a, lib(&args), "{args:?}");
        assert_eq!(a.0, 0);
        assert!(a.2.is_empty());
    }
}

#[test]
fn machine_output_is_stable() {
    let f = fixture("fig5a_p.wm");
    let args = ["--machine", "simulate-recon", &f, "--traversals", "300", "--steps", "60", "--beta-max", "20"];
    let first = bin(&args);
    assert_eq!(first.0, 0);
    for threads in ["1", "3"] {
        let mut a = vec!["--threads", threads];
        a.extend_from_slice(&args);
        assert_eq!(bin(&a), first);
    }
    assert!(first.1.lines().all(|l| l.contains('=')));
}

#[test]
fn machine_keys() {
    let (code, out, _) = bin(&["--machine", "analyze", &fixture("fig5a.wm")]);
    assert_eq!(code, 0);
    for line in ["regime=TrackableBounded", "K=4", "bound_known_start=2", "bound_unknown_start=8", "witness=none"] {
        assert!(out.lines().any(|l| l == line), "missing {line}");
    }
    let (_, out, _) = bin(&["--machine", "mc", &fixture("fig5a_p.wm"), "--recurrence", "a"]);
    assert!(out.lines().any(|l| l == "t*=21.5"), "{out}");
    let (_, out, _) = bin(&["--machine", "analyze", &fixture("fig2a.wm")]);
    assert!(out.contains("regime=Untrackable\nwitness=intersecting_cycles\n"));
}

#[test]
fn exit_codes_and_diagnostics() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["--help".into()], 0),
        (vec!["--version".into()], 0),
        (vec![], 2),
        (vec!["bogus".into()], 2),
        (vec!["growth".into(), fixture("fig5a.wm")], 2),
        (vec!["analyze".into(), "/nonexistent/model.wm".into()], 1),
        (vec!["track".into(), fixture("fig5a.wm"), "--colors".into(), "B,X".into()], 1),
        (vec!["mc".into(), fixture("fig5a.wm")], 1),
        (vec!["growth".into(), fixture("fig4.wm"), "--t-max".into(), "40".into()], 1),
        (vec!["entropy".into(), fixture("fig2a_p.wm"), "--length".into(), "5".into()], 1),
    ];
    for (args, expected) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = bin(&args);
        assert_eq!(code, expected, "{args:?}: {err}");
        if expected != 0 {
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
            assert!(err.starts_with("error: "), "{err}");
        }
    }
}

#[test]
fn parse_errors_name_the_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.wm");
    std::fs::write(&path, "weakmodel v1\ncolors B\nnode a B\nedge a z\n").unwrap();
    let p = path.display().to_string();
    let (code, _, err) = bin(&["analyze", &p]);
    assert_eq!(code, 1);
    assert!(err.starts_with(&format!("error: {p}: line 4:")), "{err}");
}

#[test]
fn csv_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let recon = dir.path().join("recon.csv");
    let entropy = dir.path().join("entropy.csv");
    let r = recon.display().to_string();
    let e = entropy.display().to_string();
    let f = fixture("fig5a_p.wm");
    let args = ["simulate-recon", &f, "--traversals", "100", "--steps", "40", "--beta-max", "10", "--out", &r];
    assert_eq!(bin(&args).0, 0);
    let text = std::fs::read_to_string(&recon).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta,alpha,n"));
    assert_eq!(lines.count(), 11);

    assert_eq!(bin(&["entropy", &fixture("fig2a_p.wm"), "--length", "20", "--samples", "4", "--out", &e]).0, 0);
    let text = std::fs::read_to_string(&entropy).unwrap();
    assert_eq!(text, "T,n_samples,bits_per_step,stderr\n20,4,0.5,0\n");
}

#[test]
fn transform_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("single.wm");
    let o = out.display().to_string();
    assert_eq!(bin(&["transform", &fixture("fig1.wm"), "--out", &o]).0, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("node b__B B\nnode b__R R\n"), "{text}");
}
