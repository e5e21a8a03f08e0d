//! CHSH Bell-function maximum and concurrence.

use crate::linalg::{hermitian_eig, kron, psd_sqrt, sigma_x, sigma_y, sigma_z, Mat3, C64};
use crate::qstate::{DensityMatrix, XState};

/// Maximum of the CHSH Bell function for an X state, with its ingredients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellResult {
    pub b: f64,
    pub b1: f64,
    pub b2: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl BellResult {
    /// `B > 2`.
    pub fn violates_chsh(&self) -> bool {
        self.b > 2.0
    }
}

pub fn bell_max_x(x: &XState) -> BellResult {
    let (m14, m23) = (x.c14.norm(), x.c23.norm());
    let u1 = 4.0 * (m14 + m23).powi(2);
    let u2 = (x.p11 + x.p44 - x.p22 - x.p33).powi(2);
    let u3 = 4.0 * (m14 - m23).powi(2);
    let b1 = 2.0 * (u1 + u2).sqrt();
    let b2 = 2.0 * (u1 + u3).sqrt();
    BellResult {
        b: b1.max(b2),
        b1,
        b2,
        u1,
        u2,
        u3,
    }
}

/// Spin correlation matrix `T_ij = Tr[ρ (σ_i ⊗ σ_j)]`.
pub fn correlation_matrix(rho: &DensityMatrix) -> [[f64; 3]; 3] {
    let paulis = [sigma_x(), sigma_y(), sigma_z()];
    let m = rho.matrix();
    std::array::from_fn(|i| std::array::from_fn(|j| (*m * kron(&paulis[i], &paulis[j])).trace().re))
}

/// Horodecki criterion: `2 sqrt(m1 + m2)` with `m1 >= m2` the two largest
/// eigenvalues of `TᵀT`.
pub fn bell_max_general(rho: &DensityMatrix) -> f64 {
    let t = Mat3::from_real_rows(correlation_matrix(rho));
    let tt = t.transpose() * t;
    let e = hermitian_eig(&tt.hermitian_part()).expect("TᵀT is symmetric");
    2.0 * (e.values[0] + e.values[1]).max(0.0).sqrt()
}

/// X-state concurrence `2 max{0, |c23| - sqrt(p11 p44), |c14| - sqrt(p22 p33)}`.
pub fn concurrence_x(x: &XState) -> f64 {
    let one = x.c23.norm() - (x.p11 * x.p44).sqrt();
    let two = x.c14.norm() - (x.p22 * x.p33).sqrt();
    2.0 * one.max(two).max(0.0)
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// Uses the Hermitian matrix `√ρ ρ̃ √ρ`, whose eigenvalues are the squares of
/// the Wootters λ's.
pub fn concurrence_general(rho: &DensityMatrix) -> f64 {
    let yy = kron(&sigma_y(), &sigma_y());
    let m = *rho.matrix();
    let flipped = yy * m.conj() * yy;
    let root = psd_sqrt(&m).expect("density matrix is PSD");
    let h = (root * flipped * root).hermitian_part();
    let e = hermitian_eig(&h).expect("Hermitian by construction");
    let l = e.values.map(|v| v.max(0.0).sqrt());
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Phase-randomized copy of an X state, for invariance checks.
pub fn with_coherence_phases(x: &XState, phase14: f64, phase23: f64) -> XState {
    XState {
        c14: x.c14 * C64::from_polar(1.0, phase14),
        c23: x.c23 * C64::from_polar(1.0, phase23),
        ..*x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{ewl_state, to_dense, EwlParams, Family};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn ewl(f: Family, r: f64, a2: f64) -> XState {
        ewl_state(&EwlParams::from_a2(f, r, a2).unwrap()).unwrap()
    }

    #[test]
    fn bell_state_hits_tsirelson() {
        let x = ewl(Family::Phi, 1.0, 0.5);
        let b = bell_max_x(&x);
        assert!((b.u1 - 1.0).abs() < 1e-15);
        assert!((b.u2 - 1.0).abs() < 1e-15);
        assert!((b.u3 - 1.0).abs() < 1e-15);
        assert!((b.b - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((bell_max_general(&to_dense(&x)) - 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_has_nothing() {
        let x = XState::maximally_mixed();
        let b = bell_max_x(&x);
        assert_eq!((b.u1, b.u2, b.u3, b.b), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(concurrence_x(&x), 0.0);
    }

    #[test]
    fn ewl_initial_bell_value() {
        // 2r sqrt(1 + 4|ab|²) at r = 0.9, |ab| = 1/2
        let x = ewl(Family::Phi, 0.9, 0.5);
        let want = 1.8 * SQRT_2;
        assert!((bell_max_x(&x).b - want).abs() < 1e-12);
        assert!((bell_max_general(&to_dense(&x)) - want).abs() < 1e-10);
        assert!((want - 2.5456).abs() < 1e-4);
    }

    #[test]
    fn product_state_sits_on_classical_boundary() {
        let mut v = [C64::new(0.0, 0.0); 4];
        v[3] = C64::new(1.0, 0.0);
        let rho = DensityMatrix::from_pure(&v).unwrap();
        assert!((bell_max_general(&rho) - 2.0).abs() < 1e-12);
        let mut v = [C64::new(0.0, 0.0); 4];
        v[1] = C64::new(1.0, 0.0);
        assert!(concurrence_general(&DensityMatrix::from_pure(&v).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn other_bell_states_are_maximal() {
        let h = FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        for v in [
            [C64::new(h, 0.0), z, z, C64::new(-h, 0.0)],
            [z, C64::new(h, 0.0), C64::new(-h, 0.0), z],
            [z, C64::new(0.0, h), C64::new(h, 0.0), z],
        ] {
            let rho = DensityMatrix::from_pure(&v).unwrap();
            assert!((bell_max_general(&rho) - 2.0 * SQRT_2).abs() < 1e-12);
            assert!((concurrence_general(&rho) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn concurrence_examples() {
        for f in [Family::Phi, Family::Psi] {
            let bell = ewl(f, 1.0, 0.5);
            assert!((concurrence_x(&bell) - 1.0).abs() < 1e-15);
            assert!((concurrence_general(&to_dense(&bell)) - 1.0).abs() < 1e-10);
            let x = ewl(f, 0.91, 0.5);
            assert!((concurrence_x(&x) - 0.865).abs() < 1e-12);
            assert!((concurrence_general(&to_dense(&x)) - 0.865).abs() < 1e-10);
        }
    }

    #[test]
    fn concurrence_zero_at_and_below_threshold() {
        for a2 in [0.1, 0.5, 0.8] {
            let p = EwlParams::from_a2(Family::Phi, 1.0, a2).unwrap();
            let rstar = p.entanglement_threshold();
            assert_eq!(concurrence_x(&ewl(Family::Phi, rstar * 0.999, a2)), 0.0);
            assert_eq!(concurrence_x(&ewl(Family::Psi, rstar * 0.5, a2)), 0.0);
            assert!(concurrence_x(&ewl(Family::Phi, (rstar + 1e-6).min(1.0), a2)) > 0.0);
        }
    }

    fn arb_x() -> impl Strategy<Value = XState> {
        crate::qstate::tests::arb_xstate()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn mutual_oracles(x in arb_x()) {
            let rho = to_dense(&x);
            prop_assert!((bell_max_x(&x).b - bell_max_general(&rho)).abs() <= 1e-10);
            prop_assert!((concurrence_x(&x) - concurrence_general(&rho)).abs() <= 1e-10);
        }

        #[test]
        fn ranges_and_u_ordering(x in arb_x()) {
            let b = bell_max_x(&x);
            prop_assert!(b.u1 >= b.u3);
            prop_assert!(b.b >= 0.0 && b.b <= 2.0 * SQRT_2 + 1e-12);
            let c = concurrence_x(&x);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        }

        #[test]
        fn phase_invariance(x in arb_x(), p14 in -3.2..3.2f64, p23 in -3.2..3.2f64) {
            let y = with_coherence_phases(&x, p14, p23);
            prop_assert!((bell_max_x(&x).b - bell_max_x(&y).b).abs() <= 1e-15);
            prop_assert!((bell_max_general(&to_dense(&x)) - bell_max_general(&to_dense(&y))).abs() <= 1e-10);
        }

        #[test]
        fn initial_concurrence_formula(
            f in prop_oneof![Just(Family::Phi), Just(Family::Psi)],
            r in 0.0..=1.0f64,
            a2 in 0.0..=1.0f64,
        ) {
            let p = EwlParams::from_a2(f, r, a2).unwrap();
            let c = concurrence_x(&ewl_state(&p).unwrap());
            let want = 2.0 * ((p.ab_abs() + 0.25) * r - 0.25).max(0.0);
            prop_assert!((c - want).abs() <= 1e-12);
            let rstar = p.entanglement_threshold();
            if r > rstar + 1e-12 {
                prop_assert!(c > 0.0);
            } else if r < rstar - 1e-12 {
                prop_assert_eq!(c, 0.0);
            }
        }
    }
}
