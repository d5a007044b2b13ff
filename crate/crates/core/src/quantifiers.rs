//! Negativity, local quantum uncertainty (LQU) and local quantum Fisher
//! information (LQFI), evaluated from their definitions on a density matrix.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decoherence::{apply_dephasing, DephasingParams};
use crate::error::{QcorrError, Result};
use crate::model::{
    ratio_or_zero, thermal_state_closed, thermal_state_oracle, DensityMatrix, ModelParams, Scaled, Variant,
};
use crate::numkernel::{
    embed_pauli_first, hermitian_eig, partial_transpose_first, psd_sqrt, Axis, ComplexMatrix4, SymMatrix3,
    PSD_CLAMP_TOL,
};

/// Pairs with `lambda_m + lambda_n` at or below this are dropped from the
/// Fisher spectral sum.
pub const SPECTRAL_CUTOFF: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegativityConvention {
    /// Sum of the magnitudes of negative partial-transpose eigenvalues; 0.5 on Bell states.
    #[default]
    Halved,
    /// `max(0, -2 mu_min)`; 1.0 on Bell states.
    Doubled,
}

impl FromStr for NegativityConvention {
    type Err = QcorrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "halved" => Ok(Self::Halved),
            "doubled" => Ok(Self::Doubled),
            other => Err(QcorrError::InvalidParams(format!("unknown negativity convention '{other}'"))),
        }
    }
}

impl fmt::Display for NegativityConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Halved => "halved",
            Self::Doubled => "doubled",
        })
    }
}

/// Partial-transpose spectrum of the thermal X-state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PTSpectrum {
    pub es: [f64; 4],
    /// The radical `sqrt(4 dz^2 cosh^2(beta r2) + (jx+jy)^2 sinh^2(beta r2))` (audit only).
    pub chi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LquResult {
    pub value: f64,
    pub w: SymMatrix3,
    pub eps: [f64; 3],
    /// Largest `|Im W_ij|` discarded by the symmetrization.
    pub imag_residue: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LqfiResult {
    pub value: f64,
    pub m: SymMatrix3,
    /// Eigenvalues of `m`, ascending.
    pub lams: [f64; 3],
    pub imag_residue: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTriple {
    pub negativity: f64,
    pub lqu: f64,
    pub lqfi: f64,
}

pub fn pt_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4]> {
    Ok(hermitian_eig(&partial_transpose_first(rho.matrix()))?.values)
}

pub fn negativity(rho: &DensityMatrix, convention: NegativityConvention) -> Result<f64> {
    let halved: f64 = pt_eigenvalues(rho)?.iter().map(|&mu| (-mu).max(0.0)).sum();
    Ok(match convention {
        NegativityConvention::Halved => halved,
        NegativityConvention::Doubled => 2.0 * halved,
    })
}

/// Partial-transpose eigenvalues of the thermal state from closed forms.
pub fn pt_eigen_closed(p: &ModelParams, variant: Variant) -> Result<PTSpectrum> {
    p.validate()?;
    let s = Scaled::new(p);
    let beta = s.beta;
    let chi = (4.0 * p.dz * p.dz * (beta * s.r2).cosh().powi(2) + (p.jx + p.jy).powi(2) * (beta * s.r2).sinh().powi(2))
        .sqrt();
    let es = match variant {
        Variant::Corrected => thermal_state_closed(p, variant)?.0.pt_eigenvalues(),
        Variant::AsPrinted => {
            let rad = (s.cp.exp() * s.r3 * s.r3 * s.chi(p) + 4.0 * p.b * p.b * s.r2 * s.r2 * s.s3().powi(2)).sqrt();
            let split = ratio_or_zero(rad, s.r2 * s.r3);
            let coh = s.r1 * s.q3;
            [(s.c3 - split) / s.z, (s.c3 + split) / s.z, (s.c2 - coh) / s.z, (s.c2 + coh) / s.z]
        }
    };
    Ok(PTSpectrum { es, chi })
}

/// Matrix elements of `sigma_axis (x) I` in the basis given by `vectors`.
fn in_basis(op: &ComplexMatrix4, vectors: &[[Complex64; 4]; 4]) -> [[Complex64; 4]; 4] {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (m, vm) in vectors.iter().enumerate() {
        for (n, vn) in vectors.iter().enumerate() {
            let ovn = op.apply(vn);
            out[m][n] = (0..4).map(|k| vm[k].conj() * ovn[k]).sum();
        }
    }
    out
}

fn split_real(c: [[Complex64; 3]; 3]) -> (SymMatrix3, f64) {
    let imag = c.iter().flatten().map(|z| z.im.abs()).fold(0.0, f64::max);
    (SymMatrix3::new(c.map(|row| row.map(|z| z.re))), imag)
}

/// `LQU = 1 - max eig W`, `W_ij = Tr(sqrt(rho) s_i sqrt(rho) s_j)` with `s_i = sigma_i (x) I`.
pub fn lqu(rho: &DensityMatrix) -> Result<LquResult> {
    let root = psd_sqrt(rho.matrix())?;
    let paulis = Axis::ALL.map(embed_pauli_first);
    let sandwiched = paulis.map(|s| root * s);
    let mut w = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            w[i][j] = (sandwiched[i] * sandwiched[j]).trace();
        }
    }
    let (w, imag_residue) = split_real(w);
    let eps = w.eigenvalues();
    Ok(LquResult { value: 1.0 - eps[2], w, eps, imag_residue })
}

/// `LQFI = 1 - max eig M`, with
/// `M_ij = sum_{m,n} 2 l_m l_n / (l_m + l_n) <m|s_i|n><n|s_j|m>`.
///
/// The sum runs over all eigenvalue pairs, diagonal pairs included, since
/// `Tr(rho H^2)` minus the full sum is what reproduces the Fisher information.
pub fn lqfi(rho: &DensityMatrix) -> Result<LqfiResult> {
    let eig = hermitian_eig(rho.matrix())?;
    if eig.min_value() < -PSD_CLAMP_TOL {
        return Err(QcorrError::NotPsd { min_eigenvalue: eig.min_value() });
    }
    let lam = eig.values.map(|l| l.max(0.0));
    let ops = Axis::ALL.map(|a| in_basis(&embed_pauli_first(a), &eig.vectors));

    let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
    for a in 0..4 {
        for b in 0..4 {
            let s = lam[a] + lam[b];
            if s <= SPECTRAL_CUTOFF {
                continue;
            }
            let weight = 2.0 * lam[a] * lam[b] / s;
            if weight == 0.0 {
                continue;
            }
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] += ops[i][a][b] * ops[j][b][a] * weight;
                }
            }
        }
    }
    let (m, imag_residue) = split_real(m);
    let lams = m.eigenvalues();
    Ok(LqfiResult { value: 1.0 - lams[2], m, lams, imag_residue })
}

/// Eigenvalues `(lambda1, lambda2, lambda3)` of a matrix with an x-y block
/// and a decoupled z entry: `lambda1,2 = (Mxx + Myy -/+ sqrt(...)) / 2`,
/// `lambda3 = Mzz`.
pub fn block_eigenvalues(m: &SymMatrix3) -> (f64, f64, f64) {
    let (xx, yy, xy, yx) = (m[(0, 0)], m[(1, 1)], m[(0, 1)], m[(1, 0)]);
    let disc = (xx * xx - 2.0 * xx * yy + 4.0 * xy * yx + yy * yy).max(0.0).sqrt();
    (0.5 * (xx + yy - disc), 0.5 * (xx + yy + disc), m[(2, 2)])
}

/// All three measures on one state. LQU and LQFI are clamped into `[0, 1]`
/// to remove rounding dust.
pub fn correlations_of(rho: &DensityMatrix, convention: NegativityConvention) -> Result<CorrelationTriple> {
    let (n, q, f) = (negativity(rho, convention)?, lqu(rho)?.value, lqfi(rho)?.value);
    if !(n.is_finite() && q.is_finite() && f.is_finite()) {
        return Err(QcorrError::NonFinite);
    }
    Ok(CorrelationTriple { negativity: n, lqu: q.clamp(0.0, 1.0), lqfi: f.clamp(0.0, 1.0) })
}

/// Thermal state, optionally dephased on qubit A, then the three measures
/// (halved negativity).
pub fn correlations(p: &ModelParams, gamma: Option<f64>) -> Result<CorrelationTriple> {
    correlations_with(p, gamma, NegativityConvention::Halved)
}

pub fn correlations_with(
    p: &ModelParams,
    gamma: Option<f64>,
    convention: NegativityConvention,
) -> Result<CorrelationTriple> {
    let mut rho = thermal_state_oracle(p)?;
    if let Some(g) = gamma {
        rho = apply_dephasing(&rho, DephasingParams::new(g)?);
    }
    correlations_of(&rho, convention)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::XState;

    fn psi_plus() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        DensityMatrix::from_pure([z, Complex64::new(s, 0.0), Complex64::new(s, 0.0), z]).unwrap()
    }

    #[test]
    fn maximally_mixed_is_uncorrelated() {
        let rho = DensityMatrix::maximally_mixed();
        assert_eq!(negativity(&rho, NegativityConvention::Halved).unwrap(), 0.0);
        let q = lqu(&rho).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((q.w[(i, j)] - e).abs() < 1e-15);
            }
        }
        assert!(q.value.abs() < 1e-15);
        let f = lqfi(&rho).unwrap();
        assert!((f.m[(0, 0)] - 1.0).abs() < 1e-15 && (f.m[(1, 1)] - 1.0).abs() < 1e-15);
        assert!(f.value.abs() < 1e-15);
    }

    #[test]
    fn bell_state_values() {
        let rho = psi_plus();
        assert!((negativity(&rho, NegativityConvention::Halved).unwrap() - 0.5).abs() < 1e-15);
        assert!((negativity(&rho, NegativityConvention::Doubled).unwrap() - 1.0).abs() < 1e-15);
        assert!((lqu(&rho).unwrap().value - 1.0).abs() < 1e-12);
        assert!((lqfi(&rho).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_state_has_no_discord_like_correlations() {
        let rho = XState { a1: 0.4, a2: 0.1, a3: 0.2, a4: 0.3, u: 0.0, v: 0.0 }.to_density().unwrap();
        let q = lqu(&rho).unwrap();
        assert!((q.w[(2, 2)] - 1.0).abs() < 1e-15);
        assert!(q.value.abs() < 1e-12);
        assert!(lqfi(&rho).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn fisher_matrix_block_formula_agrees() {
        let p = ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 1.8, gz: 0.3, b: 1.5, t: 1.0 };
        let rho = thermal_state_oracle(&p).unwrap();
        let f = lqfi(&rho).unwrap();
        let (l1, l2, l3) = block_eigenvalues(&f.m);
        assert!(f.m[(0, 2)].abs() < 1e-14 && f.m[(1, 2)].abs() < 1e-14);
        assert!(l2 >= l1);
        assert!((1.0 - l2.max(l3) - f.value).abs() < 1e-12);
        assert!(f.imag_residue < 1e-12);
        assert!(lqu(&rho).unwrap().imag_residue < 1e-12);
    }

    #[test]
    fn convention_parsing() {
        assert_eq!("halved".parse::<NegativityConvention>().unwrap(), NegativityConvention::Halved);
        assert_eq!("doubled".parse::<NegativityConvention>().unwrap(), NegativityConvention::Doubled);
        assert!("both".parse::<NegativityConvention>().is_err());
    }

    #[test]
    fn hot_limit_is_uncorrelated() {
        let p = ModelParams { jx: 2.0, jy: -1.0, jz: 3.0, dz: 2.5, gz: -1.2, b: 2.0, t: 1e6 };
        let c = correlations(&p, None).unwrap();
        assert!(c.negativity < 1e-6 && c.lqu < 1e-6 && c.lqfi < 1e-6, "{c:?}");
    }

    #[test]
    fn fully_dephased_is_uncorrelated() {
        let p = ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 1.8, gz: 0.3, b: 1.5, t: 0.5 };
        let c = correlations(&p, Some(1.0)).unwrap();
        assert_eq!(c.negativity, 0.0);
        assert!(c.lqu <= 1e-9 && c.lqfi <= 1e-9);
        assert!(correlations(&p, Some(1.5)).is_err());
    }

    #[test]
    fn printed_pt_spectrum_without_dm() {
        // At dz = 0 the printed e3, e4 coincide with the block forms; the
        // printed e1, e2 radicand carries chi where chi^2 belongs and does not.
        let mut worst12 = 0.0f64;
        for t in [0.5, 1.0, 2.0] {
            let p = ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 0.0, gz: 0.3, b: 1.5, t };
            let printed = pt_eigen_closed(&p, Variant::AsPrinted).unwrap().es;
            let exact = pt_eigen_closed(&p, Variant::Corrected).unwrap().es;
            assert!((printed[2] - exact[2]).abs() < 1e-12);
            assert!((printed[3] - exact[3]).abs() < 1e-12);

            // independent evaluation of the printed e1, e2 radicand at dz = 0
            let beta = 1.0 / t;
            let r2 = (p.jx + p.jy).abs();
            let r3 = (4.0 * p.gz * p.gz + 4.0 * p.b * p.b + (p.jx - p.jy).powi(2)).sqrt();
            let chi = r2 * (beta * r2).sinh();
            let z = 2.0 * (beta * p.jz).exp() * (beta * r2).cosh() + 2.0 * (-beta * p.jz).exp() * (beta * r3).cosh();
            let big_p =
                (4.0 * beta * p.jz).exp() * r3 * r3 * chi + 4.0 * p.b * p.b * r2 * r2 * (beta * r3).sinh().powi(2);
            let e1 = (-beta * p.jz).exp() / z * ((beta * r3).cosh() - big_p.sqrt() / (r2 * r3));
            assert!((printed[0] - e1).abs() < 1e-12);
            worst12 = worst12.max((printed[0] - exact[0]).abs());
        }
        assert!(worst12 > 1e-3);
    }
}
