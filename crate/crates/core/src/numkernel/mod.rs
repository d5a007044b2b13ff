//! Fixed-size dense linear algebra for two-qubit operators.
//!
//! All norms in this module and its tests are max-entry norms.

mod jacobi;
mod matrix;

pub use jacobi::{hermitian_eig, sym3_eig_max, HermitianEig4, HERMITIAN_TOL};
pub use matrix::{ComplexMatrix4, SymMatrix3};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};

/// Eigenvalues in `[-PSD_CLAMP_TOL, 0)` are treated as rounding noise.
pub const PSD_CLAMP_TOL: f64 = 1e-10;

/// Eigenvalues up to `SQRT_RANK_FLOOR * lambda_max` are below the solver's
/// absolute accuracy and taken as exact zeros by [`psd_sqrt`]. Without this
/// the square root turns `1e-17` of noise into `3e-9` of signal.
pub const SQRT_RANK_FLOOR: f64 = 16.0 * f64::EPSILON;

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn psd_sqrt(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let eig = hermitian_eig(m)?;
    psd_sqrt_from_eig(&eig)
}

pub(crate) fn psd_sqrt_from_eig(eig: &HermitianEig4) -> Result<ComplexMatrix4> {
    let min = eig.min_value();
    if min < -PSD_CLAMP_TOL {
        return Err(QcorrError::NotPsd { min_eigenvalue: min });
    }
    let floor = SQRT_RANK_FLOOR * eig.values[3].max(0.0);
    Ok(eig.assemble(|lam| if lam <= floor { 0.0 } else { lam.sqrt() }))
}

/// `Tr exp(-beta h)`, evaluated from the spectrum of `h`.
pub fn partition_function(h: &ComplexMatrix4, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let eig = hermitian_eig(h)?;
    Ok(eig.values.iter().map(|e| (-beta * e).exp()).sum())
}

/// Normalized Gibbs state `exp(-beta h) / Tr exp(-beta h)`.
pub fn gibbs_exp(h: &ComplexMatrix4, beta: f64) -> Result<ComplexMatrix4> {
    check_beta(beta)?;
    let eig = hermitian_eig(h)?;
    // Shift by the ground energy so the largest weight is exactly 1.
    let ground = eig.min_value();
    let norm: f64 = eig.values.iter().map(|e| (-beta * (e - ground)).exp()).sum();
    Ok(eig.assemble(|e| (-beta * (e - ground)).exp() / norm))
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(QcorrError::InvalidParams(format!("inverse temperature must be finite and >= 0, got {beta}")))
    }
}

/// Partial transpose on the first qubit: `(2a+b, 2c+d) -> (2c+b, 2a+d)`.
pub fn partial_transpose_first(m: &ComplexMatrix4) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out.set(2 * c + b, 2 * a + d, m[(2 * a + b, 2 * c + d)]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn pauli(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Axis::X => [[o, one], [one, o]],
            Axis::Y => [[o, -i], [i, o]],
            Axis::Z => [[one, o], [o, -one]],
        }
    }
}

/// `sigma_axis (x) I_2`
pub fn embed_pauli_first(axis: Axis) -> ComplexMatrix4 {
    let s = axis.pauli();
    let mut out = ComplexMatrix4::zeros();
    for a in 0..2 {
        for c in 0..2 {
            for b in 0..2 {
                out.set(2 * a + b, 2 * c + b, s[a][c]);
            }
        }
    }
    out
}
