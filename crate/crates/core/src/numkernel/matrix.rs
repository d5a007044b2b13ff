use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::error::{QcorrError, Result};

/// Dense 4x4 complex matrix in the two-qubit computational basis
/// `|00>, |01>, |10>, |11>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix4([[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    /// Checked constructor; rejects NaN and infinite entries.
    pub fn new(entries: [[Complex64; 4]; 4]) -> Result<Self> {
        if entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(Self(entries))
        } else {
            Err(QcorrError::NonFinite)
        }
    }

    pub fn from_real(entries: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(entries.map(|row| row.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn zeros() -> Self {
        Self([[Complex64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([1.0; 4])
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.0
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.0[i][j] = z;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|row| row.map(|z| z * s)))
    }

    /// Max-entry (infinity) norm.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |m - m^dagger|` over entries.
    pub fn hermiticity_residue(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Largest magnitude among entries outside the diagonal and anti-diagonal.
    pub fn non_x_residue(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.0[i][j].norm());
                }
            }
        }
        worst
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| self.0[i][k] * v[k]).sum();
        }
        out
    }

    /// `v v^dagger`
    pub fn outer(v: &[Complex64; 4]) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = v[i] * v[j].conj();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

/// Real symmetric 3x3 matrix. Symmetrized on construction so that
/// `m[i][j] == m[j][i]` holds bit-for-bit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymMatrix3([[f64; 3]; 3]);

impl SymMatrix3 {
    pub fn new(entries: [[f64; 3]; 3]) -> Self {
        let mut m = entries;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let avg = 0.5 * (entries[i][j] + entries[j][i]);
                m[i][j] = avg;
                m[j][i] = avg;
            }
        }
        Self(m)
    }

    pub fn identity() -> Self {
        Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn diag(d: [f64; 3]) -> Self {
        Self([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        super::jacobi::sym3_eigenvalues(self)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues()[2]
    }
}

impl Index<(usize, usize)> for SymMatrix3 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}
