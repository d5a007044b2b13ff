//! Shared oracles and grids for the integration tests.
#![allow(dead_code)]

pub mod golden;

use num_complex::Complex64;
use qcorr::app::AuditGrid;
use qcorr::numkernel::{hermitian_eig, ComplexMatrix4};
use qcorr::ModelParams;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The seeded random grid used by the audit, with its default ranges.
pub fn random_grid(count: usize, seed: u64) -> Vec<(ModelParams, f64)> {
    AuditGrid { count, seed, ..AuditGrid::default() }.points()
}

pub fn fig2(t: f64) -> ModelParams {
    ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 1.8, gz: 0.3, b: 1.5, t }
}

/// Ascending eigenvalues of an X-shaped Hermitian matrix, split by support
/// into the `{|01>,|10>}` and `{|00>,|11>}` blocks.
pub fn block_spectra(m: &ComplexMatrix4) -> ([f64; 2], [f64; 2]) {
    let eig = hermitian_eig(m).unwrap();
    let (mut inner, mut outer) = (vec![], vec![]);
    for (val, v) in eig.values.iter().zip(&eig.vectors) {
        if v[1].norm_sqr() + v[2].norm_sqr() > 0.5 {
            inner.push(*val);
        } else {
            outer.push(*val);
        }
    }
    assert_eq!(inner.len(), 2, "eigenvectors mix the X blocks");
    ([inner[0], inner[1]], [outer[0], outer[1]])
}

pub fn kron2(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> ComplexMatrix4 {
    let mut e = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            e[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    ComplexMatrix4::new(e).unwrap()
}

/// The SU(2) element `exp(-i theta n.sigma / 2)` for unit `n` from two angles.
pub fn su2(theta: f64, polar: f64, azimuth: f64) -> [[Complex64; 2]; 2] {
    let (nx, ny, nz) = (polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin(), polar.cos());
    let (s, co) = (0.5 * theta).sin_cos();
    [[c(co, -s * nz), c(-s * ny, -s * nx)], [c(s * ny, -s * nx), c(co, s * nz)]]
}

/// Largest `|a_k - b_k|` over two pairs.
pub fn pair_dev(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}
