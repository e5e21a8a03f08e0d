//! Two-qubit states: dense density matrices, X-structured states and the
//! extended Werner-like (EWL) family used as initial conditions.
//!
//! Basis positions follow the listing `|11>, |01>, |10>, |00>`. Qubit A is
//! the left Kronecker factor and each single-qubit space is ordered
//! `{|1>, |0>}` (excited first), so position 0 has both qubits excited,
//! position 3 both in the ground state, and positions 1/2 span the
//! one-excitation sector. `c23` is the one-excitation coherence and `c14`
//! the two-excitation coherence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, Mat4, C64};

/// Self-describing basis tag written into every serialized state.
pub const BASIS_LABEL: &str = "11,01,10,00";

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const MIN_EIGENVALUE_TOL: f64 = 1e-10;
/// Default magnitude below which off-X entries are treated as zero.
pub const X_STRUCTURE_TOL: f64 = 1e-10;
/// Slack on the 2×2 block positivity test `|c|² <= p p'`.
pub const BLOCK_POSITIVITY_SLACK: f64 = 1e-12;
/// Slack on the normalization `Σ p_ii = 1` of an X state.
pub const POPULATION_SUM_TOL: f64 = 1e-10;

/// Positions holding the X pattern; everything else must vanish.
const NON_X_ENTRIES: [(usize, usize); 8] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 3),
    (2, 0),
    (2, 3),
    (3, 1),
    (3, 2),
];

/// Defect report from [`validate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
}

impl Diagnostics {
    pub fn passes(&self) -> bool {
        self.hermiticity_defect <= HERMITICITY_TOL
            && self.trace_defect <= TRACE_TOL
            && self.min_eigenvalue >= -MIN_EIGENVALUE_TOL
    }
}

/// Hermiticity, trace and positivity defects of a candidate density matrix.
///
/// Never fails: the eigenvalues are those of the Hermitian part, so a
/// non-Hermitian input still gets a positivity figure.
pub fn validate(m: &Mat4) -> Diagnostics {
    let hermiticity_defect = m.hermiticity_defect();
    let tr = m.trace();
    let trace_defect = (tr - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = hermitian_eig(&m.hermitian_part())
        .map(|e| e.min())
        .unwrap_or(f64::NAN);
    Diagnostics {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
    }
}

/// A validated 4×4 two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    pub fn new(m: Mat4) -> Result<Self> {
        let d = validate(&m);
        if !d.passes() {
            return Err(Error::InvalidState(format!(
                "hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e}",
                d.hermiticity_defect, d.trace_defect, d.min_eigenvalue
            )));
        }
        Ok(DensityMatrix(m))
    }

    /// Wraps a matrix without validation; for outputs of trusted channels.
    pub(crate) fn new_unchecked(m: Mat4) -> Self {
        DensityMatrix(m)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat4::diag([0.25; 4]))
    }

    /// `|ψ><ψ|` for a normalized state vector.
    pub fn from_pure(psi: &[C64; 4]) -> Result<Self> {
        Self::new(Mat4::outer(psi, psi))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn diagnostics(&self) -> Diagnostics {
        validate(&self.0)
    }

    pub fn populations(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.0[(i, i)].re)
    }
}

impl From<XState> for DensityMatrix {
    fn from(x: XState) -> Self {
        to_dense(&x)
    }
}

/// X-structured state: four populations and the two anti-diagonal
/// coherences `c14 = ρ_14` and `c23 = ρ_23`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    pub p11: f64,
    pub p22: f64,
    pub p33: f64,
    pub p44: f64,
    pub c14: C64,
    pub c23: C64,
}

impl XState {
    pub fn new(p: [f64; 4], c14: C64, c23: C64) -> Result<Self> {
        let x = XState {
            p11: p[0],
            p22: p[1],
            p33: p[2],
            p44: p[3],
            c14,
            c23,
        };
        x.check()?;
        Ok(x)
    }

    pub fn maximally_mixed() -> Self {
        XState {
            p11: 0.25,
            p22: 0.25,
            p33: 0.25,
            p44: 0.25,
            c14: C64::new(0.0, 0.0),
            c23: C64::new(0.0, 0.0),
        }
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.p11, self.p22, self.p33, self.p44]
    }

    /// Checks populations, normalization and positivity of both 2×2 blocks.
    pub fn check(&self) -> Result<()> {
        let p = self.populations();
        if p.iter().any(|v| !v.is_finite() || *v < 0.0)
            || !self.c14.is_finite()
            || !self.c23.is_finite()
        {
            return Err(Error::InvalidState(format!(
                "X state has negative or non-finite entries: {self:?}"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > POPULATION_SUM_TOL {
            return Err(Error::InvalidState(format!(
                "X state populations sum to {sum}"
            )));
        }
        if self.c14.norm_sqr() > self.p11 * self.p44 + BLOCK_POSITIVITY_SLACK {
            return Err(Error::InvalidState(format!(
                "|c14|² = {:e} exceeds p11·p44 = {:e}",
                self.c14.norm_sqr(),
                self.p11 * self.p44
            )));
        }
        if self.c23.norm_sqr() > self.p22 * self.p33 + BLOCK_POSITIVITY_SLACK {
            return Err(Error::InvalidState(format!(
                "|c23|² = {:e} exceeds p22·p33 = {:e}",
                self.c23.norm_sqr(),
                self.p22 * self.p33
            )));
        }
        Ok(())
    }
}

/// Which Bell-like pure part an EWL state mixes with white noise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// One-excitation pure part `a|01> + b|10>`.
    Phi,
    /// Two-excitation pure part `a|00> + b|11>`.
    Psi,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Phi => "phi",
            Family::Psi => "psi",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi" => Ok(Family::Phi),
            "psi" => Ok(Family::Psi),
            other => Err(Error::usage(format!("family: unknown value '{other}'"))),
        }
    }
}

/// Parameters of `r|pure><pure| + (1 - r) I/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EwlParams {
    pub family: Family,
    /// Purity parameter in `[0, 1]`.
    pub r: f64,
    /// Amplitude of the first ket of the pure part, `|a| <= 1`.
    pub a: C64,
    /// Phase of `b`; `|b| = sqrt(1 - |a|²)`.
    pub b_phase: f64,
}

impl EwlParams {
    pub fn new(family: Family, r: f64, a: C64) -> Result<Self> {
        let p = EwlParams {
            family,
            r,
            a,
            b_phase: 0.0,
        };
        p.check()?;
        Ok(p)
    }

    /// Real nonnegative `a = sqrt(a2)`.
    pub fn from_a2(family: Family, r: f64, a2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a2) {
            return Err(Error::usage(format!("a2: {a2} is outside [0, 1]")));
        }
        Self::new(family, r, C64::new(a2.sqrt(), 0.0))
    }

    /// Maximally entangled pure part, `a = b = 1/√2`.
    pub fn bell(family: Family, r: f64) -> Result<Self> {
        Self::from_a2(family, r, 0.5)
    }

    pub fn with_phase(mut self, b_phase: f64) -> Self {
        self.b_phase = b_phase;
        self
    }

    pub fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.r) {
            return Err(Error::usage(format!("r: {} is outside [0, 1]", self.r)));
        }
        let mag = self.a.norm();
        if !mag.is_finite() || mag > 1.0 + 1e-15 {
            return Err(Error::usage(format!("a: |a| = {mag} exceeds 1")));
        }
        if !self.b_phase.is_finite() {
            return Err(Error::usage("phase: must be finite"));
        }
        Ok(())
    }

    pub fn b(&self) -> C64 {
        let mag = (1.0 - self.a.norm_sqr()).max(0.0).sqrt();
        C64::from_polar(mag, self.b_phase)
    }

    /// `|a b|`.
    pub fn ab_abs(&self) -> f64 {
        self.a.norm() * self.b().norm()
    }

    /// Purity above which the state is entangled, `(1 + 4|ab|)^-1`.
    pub fn entanglement_threshold(&self) -> f64 {
        1.0 / (1.0 + 4.0 * self.ab_abs())
    }
}

/// Builds the EWL state as an X state.
pub fn ewl_state(p: &EwlParams) -> Result<XState> {
    p.check()?;
    let r = p.r;
    let (a, b) = (p.a, p.b());
    let q = (1.0 - r) / 4.0;
    let zero = C64::new(0.0, 0.0);
    let x = match p.family {
        Family::Phi => XState {
            p11: q,
            p22: r * a.norm_sqr() + q,
            p33: r * b.norm_sqr() + q,
            p44: q,
            c14: zero,
            c23: a * b.conj() * r,
        },
        Family::Psi => XState {
            p11: r * b.norm_sqr() + q,
            p22: q,
            p33: q,
            p44: r * a.norm_sqr() + q,
            c14: b * a.conj() * r,
            c23: zero,
        },
    };
    Ok(x)
}

/// Dense form of an X state. The input is assumed to satisfy the X-state
/// invariants; use [`XState::check`] first for untrusted values.
pub fn to_dense(x: &XState) -> DensityMatrix {
    let mut m = Mat4::diag(x.populations());
    m[(0, 3)] = x.c14;
    m[(3, 0)] = x.c14.conj();
    m[(1, 2)] = x.c23;
    m[(2, 1)] = x.c23.conj();
    DensityMatrix::new_unchecked(m)
}

/// Validating variant of [`to_dense`].
pub fn try_to_dense(x: &XState) -> Result<DensityMatrix> {
    x.check()?;
    DensityMatrix::new(*to_dense(x).matrix())
}

/// Extracts the X parameters, failing if any off-X entry exceeds `tol`.
pub fn from_dense(m: &DensityMatrix, tol: f64) -> Result<XState> {
    let a = m.matrix();
    for &(i, j) in &NON_X_ENTRIES {
        let magnitude = a[(i, j)].norm();
        if !(magnitude <= tol) {
            return Err(Error::NotXState {
                row: i + 1,
                col: j + 1,
                magnitude,
            });
        }
    }
    Ok(XState {
        p11: a[(0, 0)].re,
        p22: a[(1, 1)].re,
        p33: a[(2, 2)].re,
        p44: a[(3, 3)].re,
        c14: a[(0, 3)],
        c23: a[(1, 2)],
    })
}

/// Complex number as `{"re": .., "im": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexValue {
    fn from(z: C64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for C64 {
    fn from(z: ComplexValue) -> Self {
        C64::new(z.re, z.im)
    }
}

#[derive(Serialize, Deserialize)]
struct XCoherences {
    c14: ComplexValue,
    c23: ComplexValue,
}

#[derive(Serialize, Deserialize)]
struct XStateJson {
    basis: String,
    populations: [f64; 4],
    coherences: XCoherences,
}

#[derive(Serialize, Deserialize)]
struct DensityMatrixJson {
    basis: String,
    entries: [[ComplexValue; 4]; 4],
}

fn check_basis(basis: &str) -> Result<()> {
    if basis != BASIS_LABEL {
        return Err(Error::InvalidState(format!(
            "unsupported basis '{basis}', expected '{BASIS_LABEL}'"
        )));
    }
    Ok(())
}

impl Serialize for XState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        XStateJson {
            basis: BASIS_LABEL.to_string(),
            populations: self.populations(),
            coherences: XCoherences {
                c14: self.c14.into(),
                c23: self.c23.into(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for XState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = XStateJson::deserialize(d)?;
        check_basis(&j.basis).map_err(serde::de::Error::custom)?;
        XState::new(
            j.populations,
            j.coherences.c14.into(),
            j.coherences.c23.into(),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.0.rows();
        DensityMatrixJson {
            basis: BASIS_LABEL.to_string(),
            entries: std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].into())),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DensityMatrixJson::deserialize(d)?;
        check_basis(&j.basis).map_err(serde::de::Error::custom)?;
        let rows = j.entries.map(|row| row.map(C64::from));
        let m = Mat4::try_from_rows(rows).map_err(serde::de::Error::custom)?;
        DensityMatrix::new(m).map_err(serde::de::Error::custom)
    }
}
