//! Two-qubit Heisenberg XYZ Hamiltonian with z-axis DM and KSEA couplings
//! in a uniform field, its Gibbs state, and the canonical X-state form.
//!
//! Units: `hbar = k_B = 1`, so the temperature `t` is an energy and
//! `beta = 1 / t`.
//!
//! The definitional route ([`thermal_state_oracle`]) is ground truth. The
//! element-wise closed forms ([`thermal_elements_closed`] and friends) come
//! in two flavours: [`Variant::AsPrinted`] reproduces the printed
//! expressions verbatim, [`Variant::Corrected`] follows from exponentiating
//! the two 2x2 blocks of the Hamiltonian exactly.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::numkernel::{gibbs_exp, hermitian_eig, ComplexMatrix4};

/// Tolerance for the density-matrix invariants (trace, Hermiticity, PSD).
pub const STATE_TOL: f64 = 1e-12;

/// Largest admissible entry outside the X pattern.
pub const X_PATTERN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    /// DM coupling along z.
    pub dz: f64,
    /// KSEA coupling along z.
    pub gz: f64,
    /// Magnetic field along z.
    pub b: f64,
    /// Temperature.
    pub t: f64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let couplings = [self.jx, self.jy, self.jz, self.dz, self.gz, self.b];
        if !couplings.iter().all(|x| x.is_finite()) {
            return Err(QcorrError::InvalidParams(format!("couplings must be finite: {self}")));
        }
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(QcorrError::InvalidParams(format!("temperature must be finite and > 0, got {}", self.t)));
        }
        Ok(())
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.t
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "jx={} jy={} jz={} dz={} gz={} b={} t={}",
            self.jx, self.jy, self.jz, self.dz, self.gz, self.b, self.t
        )
    }
}

/// Which family of closed-form expressions to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    AsPrinted,
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedScales {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub m1: f64,
    pub m2: f64,
    pub z: f64,
    pub beta: f64,
}

/// A validated two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix4,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity to [`STATE_TOL`].
    pub fn new(mat: ComplexMatrix4) -> Result<Self> {
        let herm = mat.hermiticity_residue();
        if herm > STATE_TOL {
            return Err(QcorrError::NotHermitian { deviation: herm });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(QcorrError::InvalidParams(format!("trace must be 1, got {tr}")));
        }
        let min = hermitian_eig(&mat)?.min_value();
        if min < -STATE_TOL {
            return Err(QcorrError::NotPsd { min_eigenvalue: min });
        }
        Ok(Self { mat })
    }

    pub(crate) fn new_unchecked(mat: ComplexMatrix4) -> Self {
        Self { mat }
    }

    pub fn maximally_mixed() -> Self {
        Self { mat: ComplexMatrix4::identity().scale(0.25) }
    }

    /// `|psi><psi|` for a (not necessarily normalized) state vector.
    pub fn from_pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(QcorrError::InvalidParams("state vector must be nonzero and finite".into()));
        }
        Self::new(ComplexMatrix4::outer(&psi.map(|z| z / norm)))
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.mat
    }
}

/// Canonical X-state: populations of `|00>, |01>, |10>, |11>` and the
/// non-negative coherence magnitudes `u = |rho_14|`, `v = |rho_23|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub u: f64,
    pub v: f64,
}

impl XState {
    pub fn maximally_mixed() -> Self {
        Self { a1: 0.25, a2: 0.25, a3: 0.25, a4: 0.25, u: 0.0, v: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let a = [self.a1, self.a2, self.a3, self.a4];
        let sum: f64 = a.iter().sum();
        if (sum - 1.0).abs() > STATE_TOL {
            return Err(QcorrError::InvalidParams(format!("populations sum to {sum}")));
        }
        if a.iter().any(|&x| x < -STATE_TOL) || self.u < 0.0 || self.v < 0.0 {
            return Err(QcorrError::InvalidParams("negative population or coherence".into()));
        }
        if self.u * self.u > self.a1 * self.a4 + STATE_TOL || self.v * self.v > self.a2 * self.a3 + STATE_TOL {
            return Err(QcorrError::NotPsd {
                min_eigenvalue: self.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min),
            });
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> ComplexMatrix4 {
        let mut m = ComplexMatrix4::diag([self.a1, self.a2, self.a3, self.a4]);
        let u = Complex64::new(self.u, 0.0);
        let v = Complex64::new(self.v, 0.0);
        m.set(0, 3, u);
        m.set(3, 0, u);
        m.set(1, 2, v);
        m.set(2, 1, v);
        m
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        self.validate()?;
        DensityMatrix::new(self.to_matrix())
    }

    /// Block-exact spectrum `[eta1, eta2, eta3, eta4]`: the `{|01>,|10>}`
    /// pair first, then the `{|00>,|11>}` pair, each ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let (l1, l2) = block_eigs(self.a2, self.a3, self.v);
        let (l3, l4) = block_eigs(self.a1, self.a4, self.u);
        [l1, l2, l3, l4]
    }

    /// Spectrum of the partial transpose on qubit A. The transpose moves
    /// `v` into the `{|00>,|11>}` block and `u` into `{|01>,|10>}`.
    pub fn pt_eigenvalues(&self) -> [f64; 4] {
        let (e1, e2) = block_eigs(self.a1, self.a4, self.v);
        let (e3, e4) = block_eigs(self.a2, self.a3, self.u);
        [e1, e2, e3, e4]
    }
}

/// Eigenvalues of `[[p, c], [c, q]]`, ascending.
pub(crate) fn block_eigs(p: f64, q: f64, c: f64) -> (f64, f64) {
    let mean = 0.5 * (p + q);
    let half = 0.5 * (p - q);
    let rad = half.hypot(c);
    (mean - rad, mean + rad)
}

/// Phases stripped from `rho_14` and `rho_23`, each in `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseInfo {
    pub phi14: f64,
    pub phi23: f64,
}

impl PhaseInfo {
    /// Diagonal product unitary with `|0>_k -> exp(i (phi14 + (-1)^k phi23) / 2) |0>_k`.
    /// Conjugating the original state by it yields the real X form.
    pub fn local_unitary(&self) -> ComplexMatrix4 {
        let theta1 = 0.5 * (self.phi14 - self.phi23);
        let theta2 = 0.5 * (self.phi14 + self.phi23);
        let mut u = ComplexMatrix4::zeros();
        u.set(0, 0, Complex64::from_polar(1.0, theta1 + theta2));
        u.set(1, 1, Complex64::from_polar(1.0, theta1));
        u.set(2, 2, Complex64::from_polar(1.0, theta2));
        u.set(3, 3, Complex64::new(1.0, 0.0));
        u
    }
}

fn principal_arg(z: Complex64) -> f64 {
    if z.norm() == 0.0 {
        return 0.0;
    }
    let a = z.arg();
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// The six distinct closed-form entries of the thermal state. `rho14` is the
/// `|11><00|` coefficient and `rho23` the `|10><01|` coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalElements {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: Complex64,
    pub rho23: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XSpectrum {
    pub etas: [f64; 4],
    /// Auxiliary radical of the printed eigenvalue formula (audit only).
    pub xi: f64,
}

pub fn build_hamiltonian(p: &ModelParams) -> Result<ComplexMatrix4> {
    p.validate()?;
    let mut h = ComplexMatrix4::zeros();
    let re = |x: f64| Complex64::new(x, 0.0);
    h.set(0, 0, re(2.0 * p.b + p.jz));
    h.set(1, 1, re(-p.jz));
    h.set(2, 2, re(-p.jz));
    h.set(3, 3, re(p.jz - 2.0 * p.b));
    let flip = Complex64::new(p.jx + p.jy, 2.0 * p.dz);
    h.set(2, 1, flip);
    h.set(1, 2, flip.conj());
    let pair = Complex64::new(p.jx - p.jy, 2.0 * p.gz);
    h.set(0, 3, pair);
    h.set(3, 0, pair.conj());
    // finite couplings can still overflow once doubled
    ComplexMatrix4::new(*h.entries())
}

fn r1_of(p: &ModelParams) -> f64 {
    (2.0 * p.gz).hypot(p.jx - p.jy)
}

fn r2_of(p: &ModelParams) -> f64 {
    (2.0 * p.dz).hypot(p.jx + p.jy)
}

fn r3_of(p: &ModelParams) -> f64 {
    let g = 2.0 * p.gz;
    let b = 2.0 * p.b;
    let d = p.jx - p.jy;
    (g * g + b * b + d * d).sqrt()
}

/// `[E1, E2, E3, E4] = [-jz + m1, -jz - m1, jz + m2, jz - m2]`.
pub fn closed_spectrum(p: &ModelParams) -> Result<[f64; 4]> {
    p.validate()?;
    let m1 = r2_of(p);
    let m2 = r3_of(p);
    Ok([-p.jz + m1, -p.jz - m1, p.jz + m2, p.jz - m2])
}

pub fn derived_scales(p: &ModelParams) -> Result<DerivedScales> {
    p.validate()?;
    let beta = p.beta();
    let r1 = r1_of(p);
    let r2 = r2_of(p);
    let r3 = r3_of(p);
    let z = 2.0 * (beta * p.jz).exp() * (beta * r2).cosh() + 2.0 * (-beta * p.jz).exp() * (beta * r3).cosh();
    Ok(DerivedScales { r1, r2, r3, m1: r2, m2: r3, z, beta })
}

pub fn thermal_state_oracle(p: &ModelParams) -> Result<DensityMatrix> {
    let h = build_hamiltonian(p)?;
    let rho = gibbs_exp(&h, p.beta())?;
    Ok(DensityMatrix::new_unchecked(rho))
}

/// `sinh(x) / x`, with the removable singularity at 0 handled by series.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// Exponentially scaled building blocks of the closed forms. Every
/// Boltzmann factor is multiplied by `exp(-lead)` where `lead` is the
/// largest exponent, so nothing overflows at low temperature.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Scaled {
    pub beta: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    /// `exp(beta jz) cosh(beta r2)`
    pub c2: f64,
    /// `exp(beta jz) sinh(beta r2)`
    pub s2: f64,
    /// `exp(-beta jz) cosh(beta r3)`
    pub c3: f64,
    /// `exp(-beta jz) sinh(beta r3) / r3`
    pub q3: f64,
    /// scaled partition function
    pub z: f64,
    /// `beta jz - lead`
    pub cp: f64,
    /// `-beta jz - lead`
    pub cm: f64,
}

/// `cosh(x) exp(c)`
fn cosh_scaled(x: f64, c: f64) -> f64 {
    0.5 * ((x + c).exp() + (c - x).exp())
}

/// `sinh(x) exp(c)`
fn sinh_scaled(x: f64, c: f64) -> f64 {
    if x.abs() < 1.0 {
        x.sinh() * c.exp()
    } else {
        0.5 * ((x + c).exp() - (c - x).exp())
    }
}

/// `sinh(beta r) / r * exp(c)`, finite at `r = 0`.
fn sinh_over_r_scaled(beta: f64, r: f64, c: f64) -> f64 {
    let x = beta * r;
    if x.abs() < 1.0 {
        beta * sinhc(x) * c.exp()
    } else {
        sinh_scaled(x, c) / r
    }
}

impl Scaled {
    pub(crate) fn new(p: &ModelParams) -> Self {
        let beta = p.beta();
        let r1 = r1_of(p);
        let r2 = r2_of(p);
        let r3 = r3_of(p);
        let lead = (beta * (p.jz + r2)).max(beta * (r3 - p.jz));
        let cp = beta * p.jz - lead;
        let cm = -beta * p.jz - lead;
        let c2 = cosh_scaled(beta * r2, cp);
        let s2 = sinh_scaled(beta * r2, cp);
        let c3 = cosh_scaled(beta * r3, cm);
        let q3 = sinh_over_r_scaled(beta, r3, cm);
        Self { beta, r1, r2, r3, c2, s2, c3, q3, z: 2.0 * c2 + 2.0 * c3, cp, cm }
    }

    /// `exp(-beta jz) sinh(beta r3)`
    pub(crate) fn s3(&self) -> f64 {
        sinh_scaled(self.beta * self.r3, self.cm)
    }

    /// `exp(beta jz) sinh(beta r2) / r2`
    pub(crate) fn q2(&self) -> f64 {
        sinh_over_r_scaled(self.beta, self.r2, self.cp)
    }

    /// Scaled `exp(beta jz) sqrt(4 dz^2 cosh^2(beta r2) + (jx+jy)^2 sinh^2(beta r2))`,
    /// the radical shared by several printed formulas.
    pub(crate) fn chi(&self, p: &ModelParams) -> f64 {
        (2.0 * p.dz * self.c2).hypot((p.jx + p.jy) * self.s2)
    }
}

/// `x / y` with `0 / 0 = 0`; used where a printed ratio has a removable
/// zero at `r2 = 0`.
pub(crate) fn ratio_or_zero(x: f64, y: f64) -> f64 {
    if y == 0.0 && x == 0.0 {
        0.0
    } else {
        x / y
    }
}

pub fn thermal_elements_closed(p: &ModelParams, variant: Variant) -> Result<ThermalElements> {
    p.validate()?;
    let s = Scaled::new(p);
    let rho11 = (s.c3 - 2.0 * p.b * s.q3) / s.z;
    let rho44 = (s.c3 + 2.0 * p.b * s.q3) / s.z;
    let rho22 = s.c2 / s.z;
    let rho14 = Complex64::new(p.jy - p.jx, 2.0 * p.gz) * (s.q3 / s.z);
    let rho23 = match variant {
        Variant::Corrected => Complex64::new(-(p.jx + p.jy), -2.0 * p.dz) * (s.q2() / s.z),
        Variant::AsPrinted => Complex64::new(
            ratio_or_zero(-(p.jx + p.jy) * s.s2, s.r2 * s.z),
            ratio_or_zero(2.0 * p.dz * s.c2, s.r2 * s.z),
        ),
    };
    Ok(ThermalElements { rho11, rho22, rho33: rho22, rho44, rho14, rho23 })
}

/// Closed-form canonical X-state and the phases removed from it.
pub fn thermal_state_closed(p: &ModelParams, variant: Variant) -> Result<(XState, PhaseInfo)> {
    let el = thermal_elements_closed(p, variant)?;
    let s = Scaled::new(p);
    let u = s.r1 * s.q3 / s.z;
    let v = match variant {
        Variant::Corrected => s.s2 / s.z,
        Variant::AsPrinted => ratio_or_zero(s.chi(p), s.r2 * s.z),
    };
    let x = XState { a1: el.rho11, a2: el.rho22, a3: el.rho33, a4: el.rho44, u, v };
    let phases = PhaseInfo { phi14: principal_arg(el.rho14), phi23: principal_arg(el.rho23.conj()) };
    Ok((x, phases))
}

/// Strip the coherence phases of an X-shaped state.
pub fn remove_phases(rho: &DensityMatrix) -> Result<(XState, PhaseInfo)> {
    let m = rho.matrix();
    let deviation = m.non_x_residue();
    if deviation > X_PATTERN_TOL {
        return Err(QcorrError::NotXState { deviation });
    }
    let x = XState {
        a1: m[(0, 0)].re,
        a2: m[(1, 1)].re,
        a3: m[(2, 2)].re,
        a4: m[(3, 3)].re,
        u: m[(3, 0)].norm(),
        v: m[(2, 1)].norm(),
    };
    let phases = PhaseInfo { phi14: principal_arg(m[(3, 0)]), phi23: principal_arg(m[(1, 2)]) };
    Ok((x, phases))
}

/// Thermal-state spectrum `[eta1..eta4]` from the closed forms.
pub fn x_eigenvalues(p: &ModelParams, variant: Variant) -> Result<XSpectrum> {
    p.validate()?;
    let s = Scaled::new(p);
    let xi = (4.0 * p.dz * p.dz - (p.jx + p.jy).powi(2) + s.r2 * s.r2 * (2.0 * s.beta * s.r2).cosh()).sqrt();
    let etas = match variant {
        Variant::Corrected => thermal_state_closed(p, variant)?.0.eigenvalues(),
        Variant::AsPrinted => {
            // exp(beta jz) xi, scaled
            let xi_scaled = ((2.0 * s.cp).exp() * (4.0 * p.dz * p.dz - (p.jx + p.jy).powi(2))
                + s.r2 * s.r2 * 0.5 * ((2.0 * (s.cp + s.beta * s.r2)).exp() + (2.0 * (s.cp - s.beta * s.r2)).exp()))
            .sqrt();
            let split = ratio_or_zero(xi_scaled, s.r2);
            [
                (s.c2 - split) / s.z,
                (s.c2 + split) / s.z,
                (s.cm - s.beta * s.r3).exp() / s.z,
                (s.cp - s.beta * s.r3).exp() / s.z,
            ]
        }
    };
    Ok(XSpectrum { etas, xi })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig2() -> ModelParams {
        ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 1.8, gz: 0.3, b: 1.5, t: 0.5 }
    }

    #[test]
    fn hamiltonian_entries() {
        let h = build_hamiltonian(&fig2()).unwrap();
        assert_eq!(h[(0, 0)], Complex64::new(5.0, 0.0));
        assert_eq!(h[(2, 1)], Complex64::new(-2.5, 3.6));
        assert_eq!(h[(0, 3)], Complex64::new(0.5, 0.6));
        assert_eq!(h.hermiticity_residue(), 0.0);
        let zero = ModelParams { jx: 0.0, jy: 0.0, jz: 0.0, dz: 0.0, gz: 0.0, b: 0.0, t: 1.0 };
        assert_eq!(build_hamiltonian(&zero).unwrap(), ComplexMatrix4::zeros());
    }

    #[test]
    fn fig2_spectrum_matches_eigensolver() {
        let h = build_hamiltonian(&fig2()).unwrap();
        let numeric = hermitian_eig(&h).unwrap().values;
        let m1 = 19.21f64.sqrt();
        let closed = closed_spectrum(&fig2()).unwrap();
        assert!((closed[0] - (-2.0 + m1)).abs() < 1e-15);
        assert!((closed[2] - 5.1).abs() < 1e-15);
        assert!((closed[3] - -1.1).abs() < 1e-15);
        let mut sorted = closed;
        sorted.sort_by(f64::total_cmp);
        let expected = [-2.0 - m1, -1.1, -2.0 + m1, 5.1];
        for i in 0..4 {
            assert!((numeric[i] - expected[i]).abs() < 1e-13, "{numeric:?}");
            assert!((sorted[i] - expected[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_spectrum_limit() {
        let p = ModelParams { jx: 0.7, jy: 0.7, jz: -0.4, dz: 0.0, gz: 0.0, b: 0.0, t: 1.0 };
        let e = closed_spectrum(&p).unwrap();
        assert_eq!(e, [0.4 + 1.4, 0.4 - 1.4, -0.4, -0.4]);
    }

    #[test]
    fn scales_at_fig2() {
        let d = derived_scales(&fig2()).unwrap();
        assert!((d.r1 - 0.61f64.sqrt()).abs() < 1e-15);
        assert!((d.r2 - 19.21f64.sqrt()).abs() < 1e-15);
        assert!((d.r3 - 3.1).abs() < 1e-15);
        assert_eq!(d.m1, d.r2);
        assert_eq!(d.m2, d.r3);
        let p = ModelParams { jx: 0.5, jy: 0.5, jz: 1.0, dz: 0.2, gz: 0.0, b: 0.0, t: 1.0 };
        let d = derived_scales(&p).unwrap();
        assert_eq!((d.r1, d.r3), (0.0, 0.0));
    }

    #[test]
    fn rejects_bad_temperature() {
        let mut p = fig2();
        p.t = 0.0;
        assert!(matches!(build_hamiltonian(&p), Err(QcorrError::InvalidParams(_))));
        p.t = f64::INFINITY;
        assert!(thermal_state_oracle(&p).is_err());
        p.t = 1.0;
        p.dz = f64::NAN;
        assert!(thermal_state_oracle(&p).is_err());
    }

    #[test]
    fn hot_limit_of_closed_forms() {
        let mut p = fig2();
        p.t = 1e12;
        let (x, _) = thermal_state_closed(&p, Variant::Corrected).unwrap();
        for a in [x.a1, x.a2, x.a3, x.a4] {
            assert!((a - 0.25).abs() < 1e-10);
        }
        assert!(x.u < 1e-10 && x.v < 1e-10);
    }

    #[test]
    fn strong_field_populates_11() {
        let p = ModelParams { jx: -1.0, jy: -1.5, jz: 2.0, dz: 1.8, gz: 0.3, b: 40.0, t: 0.2 };
        let rho = thermal_state_oracle(&p).unwrap();
        // The ground state of the outer block keeps a small |00> admixture.
        let r3 = (4.0 * p.gz * p.gz + 4.0 * p.b * p.b + (p.jx - p.jy).powi(2)).sqrt();
        let ground_44 = 0.5 * (1.0 + 2.0 * p.b / r3);
        assert!((rho.matrix()[(3, 3)].re - ground_44).abs() < 1e-12);
        assert!(rho.matrix()[(0, 3)].norm() < 1e-2);
    }

    #[test]
    fn remove_phases_extracts_arguments() {
        let x = XState { a1: 0.3, a2: 0.2, a3: 0.2, a4: 0.3, u: 0.1, v: 0.15 };
        let rho = x.to_density().unwrap();
        let (back, ph) = remove_phases(&rho).unwrap();
        assert_eq!(back, x);
        assert_eq!((ph.phi14, ph.phi23), (0.0, 0.0));

        let mut m = x.to_matrix();
        m.set(3, 0, Complex64::new(0.0, 0.1));
        m.set(0, 3, Complex64::new(0.0, -0.1));
        let (back, ph) = remove_phases(&DensityMatrix::new(m).unwrap()).unwrap();
        assert!((back.u - 0.1).abs() < 1e-17);
        assert!((ph.phi14 - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn remove_phases_rejects_non_x() {
        let mut m = XState::maximally_mixed().to_matrix();
        m.set(0, 1, Complex64::new(1e-3, 0.0));
        m.set(1, 0, Complex64::new(1e-3, 0.0));
        let rho = DensityMatrix::new(m).unwrap();
        assert!(matches!(remove_phases(&rho), Err(QcorrError::NotXState { .. })));
    }

    #[test]
    fn principal_arg_range() {
        assert_eq!(principal_arg(Complex64::new(-1.0, -0.0)), PI);
        assert_eq!(principal_arg(Complex64::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn x_spectrum_simple_states() {
        assert_eq!(XState::maximally_mixed().eigenvalues(), [0.25; 4]);
        let bell = XState { a1: 0.0, a2: 0.5, a3: 0.5, a4: 0.0, u: 0.0, v: 0.5 };
        assert_eq!(bell.eigenvalues(), [0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn sinhc_series_branch_is_continuous() {
        let below = sinhc(0.999_999e-6);
        let above = sinhc(1.000_001e-6);
        assert!((below - above).abs() < 1e-15);
        assert_eq!(sinhc(0.0), 1.0);
    }

    #[test]
    fn degenerate_manifolds_are_finite() {
        let p = ModelParams { jx: 0.8, jy: -0.8, jz: 0.5, dz: 0.0, gz: 0.0, b: 0.0, t: 0.3 };
        let d = derived_scales(&p).unwrap();
        assert_eq!((d.r2, d.r3), (0.0, 1.6));
        let p = ModelParams { jx: 0.8, jy: 0.8, jz: 0.5, dz: 0.0, gz: 0.0, b: 0.0, t: 0.3 };
        for variant in [Variant::Corrected, Variant::AsPrinted] {
            let (x, ph) = thermal_state_closed(&p, variant).unwrap();
            assert!([x.a1, x.a2, x.a3, x.a4, x.u, x.v, ph.phi14, ph.phi23].iter().all(|v| v.is_finite()));
            assert!(x_eigenvalues(&p, variant).unwrap().etas.iter().all(|v| v.is_finite()));
        }
        let rho = thermal_state_oracle(&p).unwrap();
        let (x, _) = thermal_state_closed(&p, Variant::Corrected).unwrap();
        assert!((x.a1 - rho.matrix()[(0, 0)].re).abs() < 1e-14);
    }
}
