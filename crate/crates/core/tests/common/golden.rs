//! Fixture files under `tests/fixtures`; `QCORR_BLESS=1` rewrites them.
#![allow(dead_code)]

use std::path::PathBuf;

use qcorr::app::{emit_csv, figure_preset, run_sweep_with_threads, Figure};
use sha2::{Digest, Sha256};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn blessing() -> bool {
    std::env::var("QCORR_BLESS").is_ok_and(|v| v == "1")
}

/// Contents of the fixture, written first when blessing.
pub fn fixture(name: &str, fresh: &str) -> String {
    let path = fixture_path(name);
    if blessing() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, fresh).unwrap();
    }
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing fixture {} ({e}); regenerate with QCORR_BLESS=1", path.display()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn figure_csv(fig: Figure, threads: Option<usize>) -> String {
    emit_csv(&run_sweep_with_threads(&figure_preset(fig), threads).unwrap()).unwrap()
}

/// `name digest` lines for every figure CSV.
pub fn figure_digests(threads: Option<usize>) -> String {
    Figure::ALL.iter().map(|&f| format!("{} {}\n", f.name(), sha256_hex(figure_csv(f, threads).as_bytes()))).collect()
}
