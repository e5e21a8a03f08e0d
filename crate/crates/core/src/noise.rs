//! Noise configuration and single-qubit dynamical maps at the optimal
//! working point.
//!
//! Low-frequency (1/f) noise is handled in the static-path approximation:
//! a Gaussian random detuning `ξ ~ N(0, Σ²)` enters quadratically at
//! `θ = π/2`, so coherences pick up the ensemble average of
//! `exp(-i ξ² t / 2Ω)`. High-frequency noise is Markovian: populations relax
//! at `1/T1 = S_f(Ω)/2` toward the thermal occupation and coherences decay
//! at `1/T2 = 1/(2 T1)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4, C64};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380649e-23;

/// Name recorded in run manifests for the oracle's generator.
pub const ORACLE_RNG: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64";

pub const MIN_ORACLE_SAMPLES: usize = 1000;

/// Band edges of the 1/f spectrum, in rad/s.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneOverFBand {
    pub gamma_min: f64,
    pub gamma_max: f64,
}

/// Noise acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    /// Qubit splitting Ω, rad/s.
    pub omega: f64,
    /// r.m.s. amplitude Σ of the low-frequency noise, rad/s.
    pub sigma: f64,
    /// Symmetrized high-frequency spectral level S_f(Ω), 1/s.
    pub sf: f64,
    /// Bath temperature, K.
    pub temperature: f64,
    /// Operating angle; only π/2 is supported.
    pub theta: f64,
    /// 1/f band the amplitude was derived from, if any.
    pub band: Option<OneOverFBand>,
}

impl NoiseParams {
    pub fn new(omega: f64, sigma: f64, sf: f64, temperature: f64) -> Result<Self> {
        let p = NoiseParams {
            omega,
            sigma,
            sf,
            temperature,
            theta: FRAC_PI_2,
            band: None,
        };
        p.check()?;
        Ok(p)
    }

    /// Derives Σ from a 1/f amplitude `πΣ²/ln(γ_M/γ_m)` and its band.
    pub fn from_one_over_f(
        omega: f64,
        a1f: f64,
        band: OneOverFBand,
        sf: f64,
        temperature: f64,
    ) -> Result<Self> {
        let sigma = sigma_from_spectrum(a1f, band.gamma_min, band.gamma_max)?;
        let mut p = Self::new(omega, sigma, sf, temperature)?;
        p.band = Some(band);
        Ok(p)
    }

    /// Ω = 1e11 rad/s, Σ = 0.02 Ω, S_f = 2e6 1/s, T = 0.04 K.
    pub fn josephson_reference() -> Self {
        Self::new(1e11, 0.02 * 1e11, 2e6, 0.04).expect("reference parameters are valid")
    }

    /// Rejects any operating angle other than π/2.
    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        self.theta = theta;
        self.check()?;
        Ok(self)
    }

    pub fn sigma_over_omega(&self) -> f64 {
        self.sigma / self.omega
    }

    pub fn check(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::usage(format!(
                "omega: {} must be positive",
                self.omega
            )));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::usage(format!(
                "sigma: {} must be nonnegative",
                self.sigma
            )));
        }
        if !(self.sf >= 0.0 && self.sf.is_finite()) {
            return Err(Error::usage(format!("sf: {} must be nonnegative", self.sf)));
        }
        if !(self.temperature > 0.0) {
            return Err(Error::usage(format!(
                "temperature: {} must be positive",
                self.temperature
            )));
        }
        if self.theta != FRAC_PI_2 {
            return Err(Error::usage(format!(
                "theta: {} unsupported, only the optimal point pi/2 is modelled",
                self.theta
            )));
        }
        if let Some(b) = self.band {
            if !(b.gamma_min > 0.0 && b.gamma_max > b.gamma_min) {
                return Err(Error::usage(format!(
                    "band: need 0 < gamma_m < gamma_M, got [{}, {}]",
                    b.gamma_min, b.gamma_max
                )));
            }
        }
        Ok(())
    }
}

/// Σ from the 1/f spectrum `S(ω) = a1f / ω` on `[γ_m, γ_M]`, where
/// `a1f = πΣ² / ln(γ_M/γ_m)`.
///
/// This is the displayed normalization taken verbatim; whether Σ² is meant
/// as the one- or two-sided integral of the spectrum is left implicit, and
/// a factor of two in `a1f` would absorb the other convention.
pub fn sigma_from_spectrum(a1f: f64, gamma_min: f64, gamma_max: f64) -> Result<f64> {
    if !(a1f > 0.0) {
        return Err(Error::usage(format!("a1f: {a1f} must be positive")));
    }
    if !(gamma_min > 0.0 && gamma_max > gamma_min) {
        return Err(Error::usage(format!(
            "band: need 0 < gamma_m < gamma_M, got [{gamma_min}, {gamma_max}]"
        )));
    }
    Ok((a1f * (gamma_max / gamma_min).ln() / PI).sqrt())
}

/// Markovian relaxation figures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Relaxation {
    /// Seconds; `f64::INFINITY` when there is no high-frequency noise.
    pub t1: f64,
    pub t2: f64,
    /// Thermal excited-state occupation.
    pub p_eq: f64,
}

pub fn relaxation_rates(p: &NoiseParams) -> Relaxation {
    let t1 = if p.sf == 0.0 {
        f64::INFINITY
    } else {
        2.0 / p.sf
    };
    let x = HBAR * p.omega / (K_B * p.temperature);
    Relaxation {
        t1,
        t2: 2.0 * t1,
        p_eq: 1.0 / (1.0 + x.exp()),
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::usage(format!("time: {t} must be finite and >= 0")));
    }
    Ok(())
}

/// Static-path defocusing factor `D(t) = (1 + iΣ²t/Ω)^(-1/2)`, principal
/// branch.
///
/// The phase convention corresponds to averaging `exp(-i ξ² t / 2Ω)`; the
/// opposite sign only conjugates D and leaves `|D|` untouched.
pub fn adiabatic_defocus(t: f64, p: &NoiseParams) -> Result<C64> {
    check_time(t)?;
    Ok(defocus(p.sigma * p.sigma * t / p.omega))
}

/// `(1 + i x)^(-1/2)`.
pub(crate) fn defocus(x: f64) -> C64 {
    C64::new(1.0, x).sqrt().inv()
}

/// Monte-Carlo estimate of the defocusing factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: C64,
    /// Standard error of the complex mean, `sqrt((var re + var im) / n)`.
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Averages `exp(-i ξ² t / 2Ω)` over `n_samples` seeded Gaussian draws.
pub fn mc_defocus_oracle(
    t: f64,
    p: &NoiseParams,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    check_time(t)?;
    if n_samples < MIN_ORACLE_SAMPLES {
        return Err(Error::usage(format!(
            "n_samples: {n_samples} < {MIN_ORACLE_SAMPLES}"
        )));
    }
    let normal = Normal::new(0.0, p.sigma).map_err(|e| Error::usage(format!("sigma: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = t / (2.0 * p.omega);

    let (mut sum_re, mut sum_im) = (0.0, 0.0);
    let (mut sq_re, mut sq_im) = (0.0, 0.0);
    for _ in 0..n_samples {
        let xi: f64 = normal.sample(&mut rng);
        let (s, c) = (-k * xi * xi).sin_cos();
        sum_re += c;
        sum_im += s;
        sq_re += c * c;
        sq_im += s * s;
    }
    let n = n_samples as f64;
    let (m_re, m_im) = (sum_re / n, sum_im / n);
    let var_re = ((sq_re / n - m_re * m_re) * n / (n - 1.0)).max(0.0);
    let var_im = ((sq_im / n - m_im * m_im) * n / (n - 1.0)).max(0.0);
    Ok(McEstimate {
        estimate: C64::new(m_re, m_im),
        std_error: ((var_re + var_im) / n).sqrt(),
        n_samples,
        seed,
    })
}

/// Which noise channels act.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseMode {
    Adiabatic,
    Quantum,
    Both,
}

impl NoiseMode {
    pub const ALL: [NoiseMode; 3] = [NoiseMode::Adiabatic, NoiseMode::Quantum, NoiseMode::Both];

    pub fn as_str(&self) -> &'static str {
        match self {
            NoiseMode::Adiabatic => "adiabatic",
            NoiseMode::Quantum => "quantum",
            NoiseMode::Both => "both",
        }
    }
}

impl FromStr for NoiseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "adiabatic" => Ok(NoiseMode::Adiabatic),
            "quantum" => Ok(NoiseMode::Quantum),
            "both" => Ok(NoiseMode::Both),
            other => Err(Error::usage(format!("mode: unknown value '{other}'"))),
        }
    }
}

/// Single-qubit map at one instant.
///
/// Acts as: excited population `p_e -> p_eq + (p_e - p_eq)·pop_survival`,
/// coherence `ρ_10 -> coherence_factor·ρ_10`, ground population by trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitMap {
    pub time: f64,
    pub pop_survival: f64,
    pub p_eq: f64,
    pub coherence_factor: C64,
}

impl SingleQubitMap {
    pub fn identity() -> Self {
        SingleQubitMap {
            time: 0.0,
            pop_survival: 1.0,
            p_eq: 0.0,
            coherence_factor: C64::new(1.0, 0.0),
        }
    }

    /// Image of the excited population `p_e`.
    pub fn excited_population(&self, p_e: f64) -> f64 {
        self.p_eq + (p_e - self.p_eq) * self.pop_survival
    }

    /// 2×2 population transfer `[[e<-e, e<-g], [g<-e, g<-g]]`.
    pub fn population_transfer(&self) -> [[f64; 2]; 2] {
        let g = self.pop_survival;
        let loss = 1.0 - g;
        [
            [g + self.p_eq * loss, self.p_eq * loss],
            [(1.0 - self.p_eq) * loss, g + (1.0 - self.p_eq) * loss],
        ]
    }

    /// Transfer matrix on row-major `vec(ρ)` with single-qubit ordering
    /// `{|1>, |0>}`, i.e. basis `{|1><1|, |1><0|, |0><1|, |0><0|}`.
    pub fn transfer_matrix(&self) -> Mat4 {
        let t = self.population_transfer();
        let mut s = Mat4::zeros();
        s[(0, 0)] = C64::new(t[0][0], 0.0);
        s[(0, 3)] = C64::new(t[0][1], 0.0);
        s[(3, 0)] = C64::new(t[1][0], 0.0);
        s[(3, 3)] = C64::new(t[1][1], 0.0);
        s[(1, 1)] = self.coherence_factor;
        s[(2, 2)] = self.coherence_factor.conj();
        s
    }

    /// Applies the map to a 2×2 density matrix in `{|1>, |0>}` ordering.
    pub fn apply(&self, rho: &Mat2) -> Mat2 {
        let s = self.transfer_matrix();
        let v = [rho[(0, 0)], rho[(0, 1)], rho[(1, 0)], rho[(1, 1)]];
        let w = s.mul_vec(&v);
        Mat2::from_rows([[w[0], w[1]], [w[2], w[3]]])
    }

    /// Choi matrix `Σ_ij |i><j| ⊗ Φ(|i><j|)`.
    pub fn choi(&self) -> Mat4 {
        let s = self.transfer_matrix();
        let mut j = Mat4::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        j[(2 * a + k, 2 * b + l)] = s[(2 * k + l, 2 * a + b)];
                    }
                }
            }
        }
        j
    }
}

/// Single-qubit map after time `t` (seconds).
///
/// With `sf = 0` the Quantum and Both modes reduce to the adiabatic
/// behaviour through `T1 = ∞`.
pub fn single_qubit_map(t: f64, p: &NoiseParams, mode: NoiseMode) -> Result<SingleQubitMap> {
    check_time(t)?;
    let relax = relaxation_rates(p);
    let free = C64::from_polar(1.0, -p.omega * t);
    let (pop_survival, damping) = match mode {
        NoiseMode::Adiabatic => (1.0, 1.0),
        NoiseMode::Quantum | NoiseMode::Both => ((-t / relax.t1).exp(), (-t / relax.t2).exp()),
    };
    let defocus = match mode {
        NoiseMode::Quantum => C64::new(1.0, 0.0),
        NoiseMode::Adiabatic | NoiseMode::Both => adiabatic_defocus(t, p)?,
    };
    Ok(SingleQubitMap {
        time: t,
        pop_survival,
        p_eq: relax.p_eq,
        coherence_factor: free * defocus * damping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eig;
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn params(omega: f64, ratio: f64) -> NoiseParams {
        NoiseParams::new(omega, ratio * omega, 2e6, 0.04).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert!((sigma_from_spectrum(PI, 1.0, E).unwrap() - 1.0).abs() < 1e-15);
        assert!((sigma_from_spectrum(4.0 * PI, 2.0, 2.0 * E).unwrap() - 2.0).abs() < 1e-14);
        let omega = 1e11;
        let (gm, gmax): (f64, f64) = (1.0, 1e9);
        let a1f = PI * (0.02f64 * omega).powi(2) / (gmax / gm).ln();
        let s = sigma_from_spectrum(a1f, gm, gmax).unwrap();
        assert!((s / (0.02 * omega) - 1.0).abs() < 1e-14);
        let p = NoiseParams::from_one_over_f(
            omega,
            a1f,
            OneOverFBand {
                gamma_min: gm,
                gamma_max: gmax,
            },
            2e6,
            0.04,
        )
        .unwrap();
        assert!((p.sigma_over_omega() - 0.02).abs() < 1e-15);
    }

    #[test]
    fn sigma_rejects_bad_inputs() {
        assert!(matches!(
            sigma_from_spectrum(0.0, 1.0, 2.0),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            sigma_from_spectrum(1.0, 2.0, 1.0),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            sigma_from_spectrum(1.0, 0.0, 1.0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn theta_off_optimal_point_rejected() {
        let p = NoiseParams::josephson_reference();
        assert!(matches!(p.with_theta(1.0), Err(Error::Usage(_))));
        assert!(p.with_theta(FRAC_PI_2).is_ok());
    }

    #[test]
    fn relaxation_examples() {
        let r = relaxation_rates(&NoiseParams::josephson_reference());
        assert!((r.t1 - 1e-6).abs() < 1e-21);
        assert!((r.t2 - 2e-6).abs() < 1e-21);

        let x = HBAR * 1e11 / (K_B * 0.04);
        assert!((x - 19.096).abs() < 1e-3);
        assert!((r.p_eq - 5.09e-9).abs() < 0.01e-9, "p_eq {}", r.p_eq);

        let hot = NoiseParams::new(1e11, 0.0, 2e6, 1e12).unwrap();
        assert!((relaxation_rates(&hot).p_eq - 0.5).abs() < 1e-9);

        let quiet = NoiseParams::new(1e11, 0.0, 0.0, 0.04).unwrap();
        assert!(relaxation_rates(&quiet).t1.is_infinite());
    }

    #[test]
    fn defocus_examples() {
        let p = params(1e11, 0.02);
        assert_eq!(adiabatic_defocus(0.0, &p).unwrap(), C64::new(1.0, 0.0));
        // Σ²t/Ω = 1
        let t = p.omega / (p.sigma * p.sigma);
        let d = adiabatic_defocus(t, &p).unwrap();
        assert!((d.norm() - 2f64.powf(-0.25)).abs() < 1e-14);
        assert!((d - C64::new(1.0, 1.0).powf(-0.5)).norm() < 1e-14);
        assert!(matches!(adiabatic_defocus(-1.0, &p), Err(Error::Usage(_))));

        // Pair of identical qubits: |D|² = (1 + Σ⁴t²/Ω²)^(-1/2).
        let t = 3e-8;
        let x = p.sigma.powi(2) * t / p.omega;
        let d = adiabatic_defocus(t, &p).unwrap();
        assert!(((d * d).norm() - (1.0 + x * x).powf(-0.5)).abs() < 1e-14);
    }

    #[test]
    fn defocus_monotone_decay() {
        let p = params(1e11, 0.02);
        let mut last = 1.0;
        for k in 0..200 {
            let t = k as f64 * 1e-8;
            let m = adiabatic_defocus(t, &p).unwrap().norm();
            assert!(m <= last);
            last = m;
        }
        assert!(adiabatic_defocus(1e3, &p).unwrap().norm() < 1e-3);
    }

    #[test]
    fn oracle_examples() {
        let p = params(1e11, 0.02);
        let est = mc_defocus_oracle(0.0, &p, 1000, 7).unwrap();
        assert_eq!(est.estimate, C64::new(1.0, 0.0));
        assert_eq!(est.std_error, 0.0);

        let t = p.omega / (p.sigma * p.sigma);
        let a = mc_defocus_oracle(t, &p, 100_000, 42).unwrap();
        let b = mc_defocus_oracle(t, &p, 100_000, 42).unwrap();
        assert_eq!(a.estimate.re.to_bits(), b.estimate.re.to_bits());
        assert_eq!(a.estimate.im.to_bits(), b.estimate.im.to_bits());
        let exact = C64::new(1.0, 1.0).powf(-0.5);
        assert!((a.estimate - exact).norm() <= 5.0 * a.std_error);

        assert!(matches!(
            mc_defocus_oracle(t, &p, 999, 1),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn map_examples() {
        let p = NoiseParams::josephson_reference();
        for mode in NoiseMode::ALL {
            let m = single_qubit_map(0.0, &p, mode).unwrap();
            assert_eq!(m.pop_survival, 1.0);
            assert_eq!(m.coherence_factor, C64::new(1.0, 0.0));
        }
        let t1 = relaxation_rates(&p).t1;
        let m = single_qubit_map(t1, &p, NoiseMode::Quantum).unwrap();
        assert!((m.pop_survival - (-1f64).exp()).abs() < 1e-15);
        assert!((m.coherence_factor.norm() - (-0.5f64).exp()).abs() < 1e-14);

        // Ωt = 3350 with both channels.
        let t = 3350.0 / p.omega;
        let m = single_qubit_map(t, &p, NoiseMode::Both).unwrap();
        let x = p.sigma_over_omega().powi(2) * 3350.0;
        let expected = (-t / t1).exp() * (1.0 + x * x).powf(-0.5);
        assert!((m.coherence_factor.norm_sqr() - expected).abs() < 1e-14);
        assert!((m.coherence_factor.norm_sqr() - 0.967 * 0.598).abs() < 2e-3);
    }

    #[test]
    fn zero_sf_degrades_to_adiabatic() {
        let p = NoiseParams::new(1e11, 2e9, 0.0, 0.04).unwrap();
        let a = single_qubit_map(1e-7, &p, NoiseMode::Adiabatic).unwrap();
        let b = single_qubit_map(1e-7, &p, NoiseMode::Both).unwrap();
        assert_eq!(a.pop_survival, b.pop_survival);
        assert_eq!(a.coherence_factor, b.coherence_factor);
    }

    #[test]
    fn t2_is_twice_t1() {
        for sf in [1.0, 2e6, 3.7e9] {
            let r = relaxation_rates(&NoiseParams::new(1e11, 0.0, sf, 0.1).unwrap());
            assert_eq!(r.t2, 2.0 * r.t1);
        }
    }

    #[test]
    fn apply_matches_action_contract() {
        let p = NoiseParams::new(1e10, 1e8, 3e6, 0.3).unwrap();
        let m = single_qubit_map(2e-7, &p, NoiseMode::Both).unwrap();
        let rho = Mat2::from_rows([
            [C64::new(0.7, 0.0), C64::new(0.2, -0.1)],
            [C64::new(0.2, 0.1), C64::new(0.3, 0.0)],
        ]);
        let out = m.apply(&rho);
        assert!((out[(0, 0)].re - m.excited_population(0.7)).abs() < 1e-15);
        assert!((out[(0, 1)] - m.coherence_factor * rho[(0, 1)]).norm() < 1e-15);
        assert!((out.trace() - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn choi_is_positive(
            log_omega in 9.0..12.0f64,
            ratio in 0.0..0.1f64,
            log_sf in 3.0..9.0f64,
            temp in 0.001..5.0f64,
            omega_t in 0.0..1e6f64,
            mode_ix in 0usize..3,
        ) {
            let omega = 10f64.powf(log_omega);
            let p = NoiseParams::new(omega, ratio * omega, 10f64.powf(log_sf), temp).unwrap();
            let m = single_qubit_map(omega_t / omega, &p, NoiseMode::ALL[mode_ix]).unwrap();
            prop_assert!(m.coherence_factor.norm() <= 1.0 + 1e-12);
            let e = hermitian_eig(&m.choi()).unwrap();
            prop_assert!(e.min() >= -1e-10, "min eig {}", e.min());
        }
    }
}
