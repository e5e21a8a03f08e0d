//! Fixed-size dense complex matrices for the two-qubit problem.
//!
//! Everything here is sized at compile time (`CMatrix<2>`, `CMatrix<3>`,
//! `CMatrix<4>`, plus the 16×16 superoperator used by the dense evolution
//! path). Dimension mismatches in products are therefore type errors rather
//! than runtime errors.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default tolerance on `max |m - m†|` accepted by [`hermitian_eig`].
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues above `-PSD_CLIP_TOL` are clipped to zero by [`psd_sqrt`].
pub const PSD_CLIP_TOL: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Dense `N × N` complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<const N: usize> {
    data: [[C64; N]; N],
}

pub type Mat2 = CMatrix<2>;
pub type Mat3 = CMatrix<3>;
pub type Mat4 = CMatrix<4>;
pub type Mat16 = CMatrix<16>;

impl<const N: usize> CMatrix<N> {
    pub const fn zeros() -> Self {
        CMatrix {
            data: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = ONE;
        }
        m
    }

    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn try_from_rows(rows: [[C64; N]; N]) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(CMatrix { data: rows })
    }

    /// Unchecked constructor for rows known to be finite.
    pub const fn from_rows(rows: [[C64; N]; N]) -> Self {
        CMatrix { data: rows }
    }

    pub fn from_real_rows(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = C64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn diag(values: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in values.into_iter().enumerate() {
            m.data[i][i] = C64::new(v, 0.0);
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64; N], v: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = self.data[j][i].conj();
            }
        }
        m
    }

    /// Elementwise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        let mut m = *self;
        for row in m.data.iter_mut() {
            for z in row.iter_mut() {
                *z = z.conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = self.data[j][i];
            }
        }
        m
    }

    pub fn scale(&self, k: C64) -> Self {
        let mut m = *self;
        for row in m.data.iter_mut() {
            for z in row.iter_mut() {
                *z *= k;
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.data[i][i]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |m - m†|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(C64::new(0.5, 0.0))
    }

    pub fn mul_vec(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|k| self.data[i][k] * v[k]).sum();
        }
        out
    }

    /// Column `j` as an array.
    pub fn column(&self, j: usize) -> [C64; N] {
        let mut c = [ZERO; N];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = self.data[i][j];
        }
        c
    }
}

impl<const N: usize> Default for CMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i][j]
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = CMatrix<N>;

    fn mul(self, rhs: Self) -> Self {
        mat_mul(&self, &rhs)
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = CMatrix<N>;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] += rhs.data[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = CMatrix<N>;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] -= rhs.data[i][j];
            }
        }
        self
    }
}

pub fn mat_mul<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> CMatrix<N> {
    let mut m = CMatrix::zeros();
    for i in 0..N {
        for j in 0..N {
            m.data[i][j] = (0..N).map(|k| a.data[i][k] * b.data[k][j]).sum();
        }
    }
    m
}

/// Kronecker product of two 2×2 matrices, row-major blocks: `a` is the
/// left (slow-index) factor.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.data[2 * i + k][2 * j + l] = a.data[i][j] * b.data[k][l];
                }
            }
        }
    }
    m
}

/// Kronecker product of two 4×4 matrices into a 16×16 matrix.
pub fn kron4(a: &Mat4, b: &Mat4) -> Mat16 {
    let mut m = Mat16::zeros();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    m.data[4 * i + k][4 * j + l] = a.data[i][j] * b.data[k][l];
                }
            }
        }
    }
    m
}

pub fn sigma_x() -> Mat2 {
    Mat2::from_rows([[ZERO, ONE], [ONE, ZERO]])
}

pub fn sigma_y() -> Mat2 {
    Mat2::from_rows([[ZERO, -I], [I, ZERO]])
}

pub fn sigma_z() -> Mat2 {
    Mat2::from_rows([[ONE, ZERO], [ZERO, -ONE]])
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Eigen<const N: usize> {
    /// Eigenvalues, sorted descending.
    pub values: [f64; N],
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: CMatrix<N>,
}

impl<const N: usize> Eigen<N> {
    /// `V Λ V†`.
    pub fn reconstruct(&self) -> CMatrix<N> {
        self.vectors * CMatrix::diag(self.values) * self.vectors.adjoint()
    }

    pub fn min(&self) -> f64 {
        self.values[N - 1]
    }
}

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input must satisfy `max |m - m†| <= HERMITICITY_TOL`; its Hermitian
/// part is what gets diagonalized. Ties in the descending sort keep the
/// original diagonal order.
pub fn hermitian_eig<const N: usize>(m: &CMatrix<N>) -> Result<Eigen<N>> {
    let defect = m.hermiticity_defect();
    if !(defect <= HERMITICITY_TOL) {
        return Err(Error::NotHermitian { defect });
    }
    let mut a = m.hermitian_part();
    let mut v = CMatrix::<N>::identity();
    let scale = a.max_abs();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.data[i][j].norm_sqr())
            .sum();
        if off <= (f64::EPSILON * scale).powi(2) {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let z = a.data[p][q];
                let g = z.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = z / g;
                let app = a.data[p][p].re;
                let aqq = a.data[q][q].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane.
                let mut u = CMatrix::<N>::identity();
                u.data[p][p] = C64::new(c, 0.0);
                u.data[p][q] = C64::new(s, 0.0);
                u.data[q][p] = -phase.conj() * s;
                u.data[q][q] = phase.conj() * c;
                a = u.adjoint() * a * u;
                a.data[p][q] = ZERO;
                a.data[q][p] = ZERO;
                v = v * u;
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    // Stable sort: equal eigenvalues keep their index order.
    order.sort_by(|&i, &j| a.data[j][j].re.total_cmp(&a.data[i][i].re));
    let values = order.map(|k| a.data[k][k].re);
    let mut vectors = CMatrix::zeros();
    for (col, &k) in order.iter().enumerate() {
        for row in 0..N {
            vectors.data[row][col] = v.data[row][k];
        }
    }
    Ok(Eigen { values, vectors })
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-PSD_CLIP_TOL, 0)` are clipped to zero; anything more
/// negative is rejected.
pub fn psd_sqrt<const N: usize>(m: &CMatrix<N>) -> Result<CMatrix<N>> {
    let eig = hermitian_eig(m)?;
    if eig.min() < -PSD_CLIP_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min(),
        });
    }
    let roots = eig.values.map(|l| l.max(0.0).sqrt());
    let r = eig.vectors * CMatrix::diag(roots) * eig.vectors.adjoint();
    Ok(r.hermitian_part())
}
