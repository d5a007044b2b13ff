use std::process::{Command, Output};

fn qcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr")).args(args).output().unwrap()
}

fn qcorr_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr")).args(args).env("QCORR_THREADS", threads).output().unwrap()
}

const FIG2_POINT: [&str; 14] =
    ["--jx", "-1", "--jy", "-1.5", "--jz", "2", "--dz", "1.8", "--gz", "0.3", "--b", "1.5", "--t", "0.5"];

#[test]
fn compute_prints_triple() {
    let mut args = vec!["compute"];
    args.extend(FIG2_POINT);
    let out = qcorr(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<(&str, f64)> = text
        .split_whitespace()
        .map(|kv| {
            let (k, v) = kv.split_once('=').unwrap();
            (k, v.parse().unwrap())
        })
        .collect();
    assert_eq!(fields.iter().map(|f| f.0).collect::<Vec<_>>(), ["negativity", "lqu", "lqfi"]);
    let triple = qcorr::correlations(
        &qcorr::ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 1.8, gz: 0.3, b: 1.5, t: 0.5 },
        None,
    )
    .unwrap();
    assert!((fields[0].1 - triple.negativity).abs() < 1e-11);
    assert!((fields[2].1 - triple.lqfi).abs() < 1e-11);
}

#[test]
fn compute_doubled_convention_and_gamma() {
    let mut args = vec!["compute", "--convention", "doubled", "--gamma", "0.3", "--json"];
    args.extend(FIG2_POINT);
    let out = qcorr(&args);
    assert_eq!(out.status.code(), Some(0));
    let t: qcorr::CorrelationTriple = serde_json::from_slice(&out.stdout).unwrap();
    let p = qcorr::ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 1.8, gz: 0.3, b: 1.5, t: 0.5 };
    let halved = qcorr::correlations(&p, Some(0.3)).unwrap();
    assert!((t.negativity - 2.0 * halved.negativity).abs() < 1e-14);
}

#[test]
fn exit_codes() {
    let out = qcorr(&["compute", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    assert_eq!(qcorr(&["--help"]).status.code(), Some(0));
    assert_eq!(qcorr(&["compute", "--t", "-1"]).status.code(), Some(1));
    assert_eq!(qcorr(&["compute", "--gamma", "1.5"]).status.code(), Some(1));
    assert_eq!(qcorr(&["sweep", "--var", "dz", "--from", "1", "--to", "0"]).status.code(), Some(1));
    assert_eq!(qcorr(&["verify", "--count", "10"]).status.code(), Some(1));
    assert_eq!(qcorr_env(&["compute"], "zero").status.code(), Some(0));
    assert_eq!(qcorr_env(&["verify"], "zero").status.code(), Some(1));
    // an overflowing field is a numerical failure, not a validation one
    assert_eq!(qcorr(&["compute", "--b", "1e308"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let out = qcorr(&[
        "sweep",
        "--var",
        "gamma",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "3",
        "--series",
        "0.5,1",
        "--jz",
        "2",
        "--jx",
        "-1",
        "--b",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 3 * 2);
    assert!(lines[1].contains(",T=0.5,"));
    assert!(lines[6].contains(",T=1,"));
}

#[test]
fn figures_fig3_series_over_b() {
    let dir = tempfile::tempdir().unwrap();
    let outdir = dir.path().join("out");
    let out = qcorr(&["figures", "--which", "fig3", "--outdir", outdir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(outdir.join("fig3.csv")).unwrap();
    let labels: std::collections::BTreeSet<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(labels.into_iter().collect::<Vec<_>>(), ["B=0.5", "B=1", "B=1.5", "B=2"]);
    assert_eq!(text.lines().count(), 1 + 4 * 301);
    assert_eq!(qcorr(&["figures", "--which", "fig9"]).status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o1 = qcorr_env(&["verify", "--count", "1000", "--seed", "7", "--report", a.to_str().unwrap()], "1");
    let o2 = qcorr_env(&["verify", "--count", "1000", "--seed", "7", "--report", b.to_str().unwrap()], "4");
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o2.status.code(), Some(0));
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ra, rb);
    let records: Vec<serde_json::Value> = serde_json::from_slice(&ra).unwrap();
    assert!(records.iter().all(|r| r["grid_size"].is_u64() && r["verdict"].is_string()));
}
