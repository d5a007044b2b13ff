//! Cyclic Jacobi diagonalization for small Hermitian matrices.
//!
//! Each rotation acts on a single index pair `(p, q)`: a diagonal phase
//! makes `a[p][q]` real and non-negative, then a real Givens rotation
//! annihilates it. Pairs whose off-diagonal entry is exactly zero are
//! skipped, so block structure present in the input (e.g. the X pattern
//! of two-qubit states) survives to the eigenvectors with exact zeros.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix4, SymMatrix3};
use crate::error::{QcorrError, Result};

const MAX_SWEEPS: usize = 64;

/// Hermiticity tolerance on input matrices (max entrywise `|m - m^dagger|`).
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenpairs of a 4x4 Hermitian matrix, values ascending.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianEig4 {
    pub values: [f64; 4],
    /// `vectors[k]` is the normalized eigenvector for `values[k]`.
    pub vectors: [[Complex64; 4]; 4],
}

impl HermitianEig4 {
    /// Reassemble `sum_k f(lambda_k) v_k v_k^dagger`.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix4 {
        let mut out = ComplexMatrix4::zeros();
        for (lam, v) in self.values.iter().zip(self.vectors.iter()) {
            let w = f(*lam);
            if w != 0.0 {
                out = out + ComplexMatrix4::outer(v).scale(w);
            }
        }
        out
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }
}

fn jacobi<const N: usize>(mut a: [[Complex64; N]; N]) -> ([f64; N], [[Complex64; N]; N]) {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = [[zero; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Complex64::new(row[i].re, 0.0);
    }

    let scale: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return ([0.0; N], v);
    }

    for sweep in 0..MAX_SWEEPS {
        let off: f64 =
            (0..N).flat_map(|p| ((p + 1)..N).map(move |q| (p, q))).map(|(p, q)| a[p][q].norm_sqr()).sum::<f64>().sqrt();
        if off <= 1e-17 * scale {
            break;
        }

        for p in 0..N {
            for q in (p + 1)..N {
                let mag = a[p][q].norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                // Later sweeps: drop entries that are below rounding of both diagonals.
                if sweep > 3 && app.abs() + 100.0 * mag == app.abs() && aqq.abs() + 100.0 * mag == aqq.abs() {
                    a[p][q] = zero;
                    a[q][p] = zero;
                    continue;
                }

                let phase = a[p][q] / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // Columns p and q of U; all other columns are unit vectors.
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                // a <- a U (columns p, q)
                for row in a.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = xp * u_pp + xq * u_qp;
                    row[q] = xp * u_pq + xq * u_qq;
                }
                // a <- U^dagger a (rows p, q)
                for k in 0..N {
                    let (xp, xq) = (a[p][k], a[q][k]);
                    a[p][k] = u_pp.conj() * xp + u_qp.conj() * xq;
                    a[q][k] = u_pq.conj() * xp + u_qq.conj() * xq;
                }
                a[p][q] = zero;
                a[q][p] = zero;
                a[p][p] = Complex64::new(a[p][p].re, 0.0);
                a[q][q] = Complex64::new(a[q][q].re, 0.0);

                for row in v.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = xp * u_pp + xq * u_qp;
                    row[q] = xp * u_pq + xq * u_qq;
                }
            }
        }
    }

    let mut values = [0.0; N];
    for (i, x) in values.iter_mut().enumerate() {
        *x = a[i][i].re;
    }
    (values, v)
}

/// Stable ascending order: ties keep their Jacobi index order.
fn ascending_order<const N: usize>(values: &[f64; N]) -> [usize; N] {
    let mut idx = [0usize; N];
    for (i, x) in idx.iter_mut().enumerate() {
        *x = i;
    }
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    idx
}

#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn hermitian_eig(m: &ComplexMatrix4) -> Result<HermitianEig4> {
    let deviation = m.hermiticity_residue();
    // negated so a NaN residue is rejected too
    if !(deviation <= HERMITIAN_TOL) {
        return Err(QcorrError::NotHermitian { deviation });
    }
    let e = m.entries();
    let mut sym = *e;
    for i in 0..4 {
        for j in 0..4 {
            sym[i][j] = (e[i][j] + e[j][i].conj()) * 0.5;
        }
    }
    let (raw_values, raw_vectors) = jacobi(sym);
    let order = ascending_order(&raw_values);

    let zero = Complex64::new(0.0, 0.0);
    let mut values = [0.0; 4];
    let mut vectors = [[zero; 4]; 4];
    for (k, &col) in order.iter().enumerate() {
        values[k] = raw_values[col];
        for i in 0..4 {
            vectors[k][i] = raw_vectors[i][col];
        }
    }
    Ok(HermitianEig4 { values, vectors })
}

pub(crate) fn sym3_eigenvalues(m: &SymMatrix3) -> [f64; 3] {
    let e = m.entries();
    let a = e.map(|row| row.map(|x| Complex64::new(x, 0.0)));
    let (values, _) = jacobi(a);
    let order = ascending_order(&values);
    order.map(|i| values[i])
}

/// Largest eigenvalue of a real symmetric 3x3 matrix.
pub fn sym3_eig_max(m: &SymMatrix3) -> f64 {
    m.max_eigenvalue()
}
