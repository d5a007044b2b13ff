mod common;

use common::fig2;
use common::golden::{figure_digests, fixture};
use num_complex::Complex64;
use qcorr::model::thermal_state_oracle;
use qcorr::numkernel::{psd_sqrt, ComplexMatrix4};
use qcorr::{correlations, CorrelationTriple};

fn matrix_json(m: &ComplexMatrix4) -> String {
    let rows: Vec<Vec<[f64; 2]>> = m.entries().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
    serde_json::to_string_pretty(&rows).unwrap() + "\n"
}

fn parse_matrix(s: &str) -> [[Complex64; 4]; 4] {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(s).unwrap();
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = Complex64::new(rows[i][j][0], rows[i][j][1]);
        }
    }
    out
}

fn assert_close(got: &ComplexMatrix4, frozen: &str, tol: f64) {
    let want = parse_matrix(frozen);
    for i in 0..4 {
        for j in 0..4 {
            let d = (got[(i, j)] - want[i][j]).norm();
            assert!(d <= tol, "entry ({i},{j}) moved by {d}");
        }
    }
}

#[test]
fn thermal_state_fixture() {
    let rho = thermal_state_oracle(&fig2(0.5)).unwrap();
    let frozen = fixture("thermal_fig2_t0.5.json", &matrix_json(rho.matrix()));
    assert_close(rho.matrix(), &frozen, 1e-14);
}

#[test]
fn psd_sqrt_fixture() {
    let rho = thermal_state_oracle(&fig2(1.0)).unwrap();
    let s = psd_sqrt(rho.matrix()).unwrap();
    let frozen = fixture("sqrt_thermal_fig2_t1.json", &matrix_json(&s));
    assert_close(&s, &frozen, 1e-14);
}

#[test]
fn correlation_triple_fixture() {
    let t = correlations(&fig2(0.5), None).unwrap();
    let frozen = fixture("triple_fig2_t0.5.json", &(serde_json::to_string_pretty(&t).unwrap() + "\n"));
    let want: CorrelationTriple = serde_json::from_str(&frozen).unwrap();
    assert!((t.negativity - want.negativity).abs() <= 1e-13);
    assert!((t.lqu - want.lqu).abs() <= 1e-13);
    assert!((t.lqfi - want.lqfi).abs() <= 1e-13);
}

#[test]
fn figure_csvs_match_frozen_digests() {
    let fresh = figure_digests(Some(1));
    assert_eq!(fresh, fixture("figure_digests.txt", &fresh));
}
