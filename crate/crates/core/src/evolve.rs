//! Two-qubit evolution under independent baths.
//!
//! Each qubit carries its own [`SingleQubitMap`]; the joint channel is their
//! tensor product. [`apply_general`] materializes that product as a 16×16
//! superoperator and works on any density matrix; [`apply_x`] updates only
//! the seven X parameters. The two paths check each other.

use crate::error::Result;
use crate::linalg::{kron4, Mat4, C64};
use crate::noise::{single_qubit_map, NoiseMode, NoiseParams, SingleQubitMap};
use crate::qstate::{DensityMatrix, XState};

/// Product of two single-qubit maps taken at the same time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitMap {
    pub map_a: SingleQubitMap,
    pub map_b: SingleQubitMap,
}

impl TwoQubitMap {
    pub fn new(map_a: SingleQubitMap, map_b: SingleQubitMap) -> Self {
        debug_assert_eq!(map_a.time, map_b.time, "maps taken at different times");
        TwoQubitMap { map_a, map_b }
    }

    pub fn identity() -> Self {
        Self::new(SingleQubitMap::identity(), SingleQubitMap::identity())
    }

    /// Both qubits under the same noise.
    pub fn identical(t: f64, p: &NoiseParams, mode: NoiseMode) -> Result<Self> {
        let m = single_qubit_map(t, p, mode)?;
        Ok(Self::new(m, m))
    }

    /// 16×16 superoperator on row-major `vec(ρ)` in the two-qubit basis.
    pub fn superoperator(&self) -> crate::linalg::Mat16 {
        let product = kron4(&self.map_a.transfer_matrix(), &self.map_b.transfer_matrix());
        // `product` acts on the index order (a, a', b, b'); permute to the
        // two-qubit row-major order (a, b, a', b').
        let perm = |i: usize| {
            let (a, ap, b, bp) = ((i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1);
            (a << 3) | (b << 2) | (ap << 1) | bp
        };
        let mut s = crate::linalg::Mat16::zeros();
        for i in 0..16 {
            for j in 0..16 {
                s[(perm(i), perm(j))] = product[(i, j)];
            }
        }
        s
    }
}

/// Dense evolution through the full product superoperator.
pub fn apply_general(m: &TwoQubitMap, rho0: &DensityMatrix) -> DensityMatrix {
    let s = m.superoperator();
    let rows = rho0.matrix().rows();
    let v: [C64; 16] = std::array::from_fn(|k| rows[k / 4][k % 4]);
    let w = s.mul_vec(&v);
    let out = Mat4::from_rows(std::array::from_fn(|i| {
        std::array::from_fn(|j| w[4 * i + j])
    }));
    DensityMatrix::new_unchecked(out)
}

/// Closed-form X-state update.
///
/// Populations go through the product of the two 2×2 population transfers;
/// `c23 -> c_A·conj(c_B)·c23` and `c14 -> c_A·c_B·c14`.
pub fn apply_x(m: &TwoQubitMap, x0: &XState) -> Result<XState> {
    x0.check()?;
    Ok(apply_x_unchecked(m, x0))
}

/// [`apply_x`] without validating the input.
pub fn apply_x_unchecked(m: &TwoQubitMap, x0: &XState) -> XState {
    let ta = m.map_a.population_transfer();
    let tb = m.map_b.population_transfer();
    // Position = 2·(A index) + (B index), index 0 = excited.
    let p0 = x0.populations();
    let p: [f64; 4] = std::array::from_fn(|out| {
        let (ia, ib) = (out >> 1, out & 1);
        (0..4)
            .map(|inp| ta[ia][inp >> 1] * tb[ib][inp & 1] * p0[inp])
            .sum()
    });
    let (ca, cb) = (m.map_a.coherence_factor, m.map_b.coherence_factor);
    XState {
        p11: p[0],
        p22: p[1],
        p33: p[2],
        p44: p[3],
        c14: ca * cb * x0.c14,
        c23: ca * cb.conj() * x0.c23,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::relaxation_rates;
    use crate::qstate::{ewl_state, from_dense, to_dense, EwlParams, Family};

    fn pure(idx: usize) -> DensityMatrix {
        let mut v = [C64::new(0.0, 0.0); 4];
        v[idx] = C64::new(1.0, 0.0);
        DensityMatrix::from_pure(&v).unwrap()
    }

    #[test]
    fn superoperator_matches_brute_force_transfer_tensor() {
        let p = NoiseParams::new(1e10, 3e8, 4e6, 0.2).unwrap();
        let ma = single_qubit_map(1e-7, &p, NoiseMode::Both).unwrap();
        let q = NoiseParams::new(2e10, 1e8, 1e6, 0.05).unwrap();
        let mb = single_qubit_map(1e-7, &q, NoiseMode::Quantum).unwrap();
        let m = TwoQubitMap::new(ma, mb);
        let s = m.superoperator();
        let (sa, sb) = (ma.transfer_matrix(), mb.transfer_matrix());
        // ρ'_{(a b),(a' b')} = Σ Sa[(a a'),(m m')] Sb[(b b'),(n n')] ρ_{(m n),(m' n')}
        for a in 0..2 {
            for b in 0..2 {
                for ap in 0..2 {
                    for bp in 0..2 {
                        for mm in 0..2 {
                            for n in 0..2 {
                                for mp in 0..2 {
                                    for np in 0..2 {
                                        let row = 4 * (2 * a + b) + (2 * ap + bp);
                                        let col = 4 * (2 * mm + n) + (2 * mp + np);
                                        let want = sa[(2 * a + ap, 2 * mm + mp)]
                                            * sb[(2 * b + bp, 2 * n + np)];
                                        assert_eq!(s[(row, col)], want);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_map_is_identity() {
        let x = ewl_state(&EwlParams::from_a2(Family::Psi, 0.7, 0.3).unwrap()).unwrap();
        let m = TwoQubitMap::identity();
        assert_eq!(apply_x(&m, &x).unwrap(), x);
        let rho = to_dense(&x);
        assert_eq!(apply_general(&m, &rho), rho);
    }

    #[test]
    fn amplitude_damping_product_at_zero_temperature() {
        // Huge ħΩ/kT drives p_eq to exactly zero.
        let p = NoiseParams::new(1e11, 0.0, 2e6, 1e-6).unwrap();
        assert_eq!(relaxation_rates(&p).p_eq, 0.0);
        let t = 7e-7;
        let g = (-t / relaxation_rates(&p).t1).exp();
        let m = TwoQubitMap::identical(t, &p, NoiseMode::Quantum).unwrap();
        let out = apply_general(&m, &pure(0)).populations();
        let want = [g * g, g * (1.0 - g), g * (1.0 - g), (1.0 - g) * (1.0 - g)];
        for k in 0..4 {
            assert!(
                (out[k] - want[k]).abs() < 1e-15,
                "{k}: {} vs {}",
                out[k],
                want[k]
            );
        }
    }

    #[test]
    fn adiabatic_phases_of_phi_and_psi() {
        let p = NoiseParams::josephson_reference();
        let t = 2500.0 / p.omega;
        let x_ratio = p.sigma_over_omega().powi(2) * 2500.0;
        let lorentz = (1.0 + x_ratio * x_ratio).powf(-0.5);
        let m = TwoQubitMap::identical(t, &p, NoiseMode::Adiabatic).unwrap();

        let phi = ewl_state(&EwlParams::bell(Family::Phi, 0.9).unwrap()).unwrap();
        let out = apply_x(&m, &phi).unwrap();
        let want = phi.c23 * lorentz;
        assert!((out.c23 - want).norm() < 1e-14);
        assert!(out.c23.im.abs() < 1e-15);

        let psi = ewl_state(&EwlParams::bell(Family::Psi, 0.9).unwrap()).unwrap();
        let out = apply_x(&m, &psi).unwrap();
        assert!((out.c14.norm() - psi.c14.norm() * lorentz).abs() < 1e-14);
        let d = crate::noise::adiabatic_defocus(t, &p).unwrap();
        let phase = C64::from_polar(1.0, -2.0 * p.omega * t) * (d * d) / (d * d).norm();
        assert!((out.c14 / out.c14.norm() - phase).norm() < 1e-12);
    }

    #[test]
    fn adiabatic_populations_bitwise_frozen() {
        let p = NoiseParams::josephson_reference();
        let x = ewl_state(&EwlParams::from_a2(Family::Phi, 0.83, 0.27).unwrap()).unwrap();
        for k in 0..50 {
            let m = TwoQubitMap::identical(k as f64 * 1e-7, &p, NoiseMode::Adiabatic).unwrap();
            let out = apply_x(&m, &x).unwrap();
            assert_eq!(out.populations(), x.populations());
        }
    }

    #[test]
    fn quantum_mode_is_markovian_adiabatic_is_not() {
        let p = NoiseParams::new(1e11, 2e9, 2e6, 0.3).unwrap();
        let x = ewl_state(&EwlParams::from_a2(Family::Psi, 0.95, 0.4).unwrap()).unwrap();
        let (t1, t2) = (3e-7, 5e-7);
        let step = |t: f64, mode| TwoQubitMap::identical(t, &p, mode).unwrap();

        let two = apply_x(
            &step(t2, NoiseMode::Quantum),
            &apply_x(&step(t1, NoiseMode::Quantum), &x).unwrap(),
        )
        .unwrap();
        let one = apply_x(&step(t1 + t2, NoiseMode::Quantum), &x).unwrap();
        let rho2 = to_dense(&two);
        let rho1 = to_dense(&one);
        assert!((*rho2.matrix() - *rho1.matrix()).max_abs() <= 1e-10);

        let two = apply_x(
            &step(t2, NoiseMode::Adiabatic),
            &apply_x(&step(t1, NoiseMode::Adiabatic), &x).unwrap(),
        )
        .unwrap();
        let one = apply_x(&step(t1 + t2, NoiseMode::Adiabatic), &x).unwrap();
        // Defocusing is not divisible: composed factors decay faster.
        assert!(two.c14.norm() < one.c14.norm() - 1e-3);
    }

    #[test]
    fn structure_is_preserved_by_general_path() {
        let p = NoiseParams::josephson_reference();
        let x = ewl_state(&EwlParams::bell(Family::Phi, 0.91).unwrap()).unwrap();
        let m = TwoQubitMap::identical(4e-8, &p, NoiseMode::Both).unwrap();
        let dense = apply_general(&m, &to_dense(&x));
        let via_dense = from_dense(&dense, 1e-12).unwrap();
        let fast = apply_x(&m, &x).unwrap();
        assert!((via_dense.c23 - fast.c23).norm() < 1e-12);
    }
}
