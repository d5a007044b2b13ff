//! One-qubit dephasing on qubit A and the closed-form spectra of the
//! dephased thermal X-state.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::model::{ratio_or_zero, thermal_state_closed, DensityMatrix, ModelParams, Scaled, Variant, XState};
use crate::numkernel::{embed_pauli_first, Axis, ComplexMatrix4};

/// Dephasing strength `gamma` in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DephasingParams {
    gamma: f64,
}

impl DephasingParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&gamma) {
            Ok(Self { gamma })
        } else {
            Err(QcorrError::InvalidParams(format!("gamma must lie in [0, 1], got {gamma}")))
        }
    }

    pub fn from_rate_time(rate: f64, time: f64) -> Result<Self> {
        Self::new(gamma_from_time(rate, time)?)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Factor multiplying every coherence between the two states of qubit A.
    pub fn coherence_factor(&self) -> f64 {
        1.0 - self.gamma
    }
}

/// `gamma = 1 - exp(-rate * time)`
pub fn gamma_from_time(rate: f64, time: f64) -> Result<f64> {
    if !(rate >= 0.0 && time >= 0.0) || rate.is_nan() || time.is_nan() {
        return Err(QcorrError::InvalidParams(format!("rate and time must be >= 0, got {rate}, {time}")));
    }
    let x = rate * time;
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(-(-x).exp_m1())
}

/// Kraus pair `{sqrt(1 - gamma/2) I, sqrt(gamma/2) sigma_z (x) I}`.
pub fn dephasing_kraus(d: DephasingParams) -> [ComplexMatrix4; 2] {
    let g = d.gamma();
    [ComplexMatrix4::identity().scale((1.0 - 0.5 * g).sqrt()), embed_pauli_first(Axis::Z).scale((0.5 * g).sqrt())]
}

/// The projector pair `sqrt(gamma) |0><0| (x) I`, `sqrt(gamma) |1><1| (x) I`
/// as printed. Its completeness sum is `gamma I`; kept for the audit.
pub fn printed_kraus(d: DephasingParams) -> [ComplexMatrix4; 2] {
    let s = d.gamma().sqrt();
    [ComplexMatrix4::diag([s, s, 0.0, 0.0]), ComplexMatrix4::diag([0.0, 0.0, s, s])]
}

pub fn kraus_completeness(ops: &[ComplexMatrix4]) -> ComplexMatrix4 {
    ops.iter().fold(ComplexMatrix4::zeros(), |acc, k| acc + k.adjoint() * *k)
}

/// `sum_k K rho K^dagger`
pub fn apply_kraus(ops: &[ComplexMatrix4], rho: &ComplexMatrix4) -> ComplexMatrix4 {
    ops.iter().fold(ComplexMatrix4::zeros(), |acc, k| acc + *k * *rho * k.adjoint())
}

/// `(1 - gamma/2) rho + (gamma/2) (sigma_z (x) I) rho (sigma_z (x) I)`,
/// applied entry-wise: blocks diagonal in qubit A are untouched, blocks
/// off-diagonal in qubit A are multiplied by `1 - gamma`.
pub fn apply_dephasing(rho: &DensityMatrix, d: DephasingParams) -> DensityMatrix {
    let f = d.coherence_factor();
    let m = rho.matrix();
    let mut out = *m;
    for i in 0..4 {
        for j in 0..4 {
            if i / 2 != j / 2 {
                out.set(i, j, m[(i, j)] * f);
            }
        }
    }
    DensityMatrix::new_unchecked(out)
}

pub fn dephase_xstate(x: &XState, d: DephasingParams) -> XState {
    let f = d.coherence_factor();
    XState { u: x.u * f, v: x.v * f, ..*x }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DephasedSpectrum {
    pub etas: [f64; 4],
    /// Slopes `xi_k = psi_k[0] / psi_k[3]` of the `{|00>,|11>}` eigenvectors
    /// for `etas[2]` and `etas[3]`; infinite when the vector is `|00>`.
    pub xi: [f64; 2],
    /// `sqrt(xi_k^2 + 1)`.
    pub zeta: [f64; 2],
    /// Real eigenvectors, `vectors[k]` belongs to `etas[k]`.
    pub vectors: [[f64; 4]; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DephasedPTSpectrum {
    pub es: [f64; 4],
    /// Radicand of the printed `e1, e2` formulas (audit only).
    pub p_aux: f64,
}

/// Orthonormal eigenvectors of `[[p, c], [c, q]]` for the ascending
/// eigenvalues. With `c = 0` the unit vectors are returned, first index
/// first on ties.
fn block_vectors(p: f64, q: f64, c: f64) -> ([f64; 2], [f64; 2]) {
    if c == 0.0 {
        return if p <= q { ([1.0, 0.0], [0.0, 1.0]) } else { ([0.0, 1.0], [1.0, 0.0]) };
    }
    let theta = 0.5 * (2.0 * c).atan2(p - q);
    let (sn, cs) = theta.sin_cos();
    ([-sn, cs], [cs, sn])
}

pub fn dephased_spectrum_closed(p: &ModelParams, d: DephasingParams, variant: Variant) -> Result<DephasedSpectrum> {
    p.validate()?;
    let g = d.gamma();
    match variant {
        Variant::Corrected => {
            let x = dephase_xstate(&thermal_state_closed(p, Variant::Corrected)?.0, d);
            let etas = x.eigenvalues();
            let (lo23, hi23) = block_vectors(x.a2, x.a3, x.v);
            let (lo14, hi14) = block_vectors(x.a1, x.a4, x.u);
            let vectors = [
                [0.0, lo23[0], lo23[1], 0.0],
                [0.0, hi23[0], hi23[1], 0.0],
                [lo14[0], 0.0, 0.0, lo14[1]],
                [hi14[0], 0.0, 0.0, hi14[1]],
            ];
            let xi = [lo14[0] / lo14[1], hi14[0] / hi14[1]];
            Ok(DephasedSpectrum { etas, xi, zeta: xi.map(|x| x.hypot(1.0)), vectors })
        }
        Variant::AsPrinted => {
            let s = Scaled::new(p);
            let f = 1.0 - g;
            let split = ratio_or_zero(s.chi(p), s.r2);
            let rad = (4.0 * p.b * p.b + s.r1 * s.r1 * f * f).sqrt();
            let etas = [
                f * (s.c2 - split) / s.z,
                f * (s.c2 + split) / s.z,
                (s.c3 - s.q3 * rad) / s.z,
                (s.c3 + s.q3 * rad) / s.z,
            ];
            let xi1 = (2.0 * p.b - rad) / (s.r1 * (g - 1.0));
            let xi2 = (2.0 * p.b - (4.0 * p.b * p.b - s.r1 * s.r1 * f * f).sqrt()) / (s.r1 * (g - 1.0));
            let zeta = [xi1.hypot(1.0), xi2.hypot(1.0)];
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let vectors = [
                [0.0, h, h, 0.0],
                [0.0, -h, h, 0.0],
                [xi1 / zeta[0].sqrt(), 0.0, 0.0, 1.0 / zeta[0].sqrt()],
                [xi2 / zeta[1].sqrt(), 0.0, 0.0, 1.0 / zeta[1].sqrt()],
            ];
            Ok(DephasedSpectrum { etas, xi: [xi1, xi2], zeta, vectors })
        }
    }
}

pub fn dephased_pt_eigen_closed(p: &ModelParams, d: DephasingParams, variant: Variant) -> Result<DephasedPTSpectrum> {
    p.validate()?;
    let g = d.gamma();
    let f = 1.0 - g;
    let beta = p.beta();
    let r2 = (2.0 * p.dz).hypot(p.jx + p.jy);
    let r3 = (4.0 * p.gz * p.gz + 4.0 * p.b * p.b + (p.jx - p.jy).powi(2)).sqrt();
    let chi =
        (4.0 * p.dz * p.dz * (beta * r2).cosh().powi(2) + (p.jx + p.jy).powi(2) * (beta * r2).sinh().powi(2)).sqrt();
    let p_aux =
        (4.0 * beta * p.jz).exp() * r3 * r3 * f * f * chi + 4.0 * p.b * p.b * r2 * r2 * (beta * r3).sinh().powi(2);
    let es = match variant {
        Variant::Corrected => {
            let x = dephase_xstate(&thermal_state_closed(p, Variant::Corrected)?.0, d);
            x.pt_eigenvalues()
        }
        Variant::AsPrinted => {
            let s = Scaled::new(p);
            let rad =
                (s.cp.exp() * s.r3 * s.r3 * f * f * s.chi(p) + 4.0 * p.b * p.b * s.r2 * s.r2 * s.s3().powi(2)).sqrt();
            let coh = s.r1 * s.q3;
            [
                (s.c3 - ratio_or_zero(rad, s.r2 * s.r3)) / s.z,
                // printed without the square root on the radicand
                (s.c3 + ratio_or_zero(s.cm.exp() * p_aux, s.r2 * s.r3)) / s.z,
                f * (s.c2 - coh) / s.z,
                f * (s.c2 + coh) / s.z,
            ]
        }
    };
    Ok(DephasedPTSpectrum { es, p_aux })
}

/// The dephased X-state matrix keeping the printed population prefactors
/// on `rho22`, `rho33` (not trace preserving; audit only).
pub fn printed_dephased_matrix(x: &XState, d: DephasingParams) -> ComplexMatrix4 {
    let f = d.coherence_factor();
    let mut m = ComplexMatrix4::diag([x.a1, f * x.a2, f * x.a3, x.a4]);
    let u = Complex64::new(f * x.u, 0.0);
    let v = Complex64::new(f * x.v, 0.0);
    m.set(0, 3, u);
    m.set(3, 0, u);
    m.set(1, 2, v);
    m.set(2, 1, v);
    m
}
