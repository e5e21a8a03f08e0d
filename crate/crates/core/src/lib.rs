//! Decay of CHSH nonlocality and entanglement for two noninteracting qubits
//! under independent broadband noise.
//!
//! The noise on each qubit splits into a low-frequency 1/f part, treated as
//! a quasi-static Gaussian detuning (algebraic defocusing of coherences), and
//! a high-frequency Markovian part (T1 relaxation with `T2 = 2 T1`). The two
//! single-qubit maps are composed into a two-qubit channel that preserves
//! the X structure of extended Werner-like initial states, from which the
//! maximum of the CHSH Bell function and the concurrence follow in closed
//! form. Dense-matrix routes (Horodecki criterion, Wootters concurrence,
//! 16×16 superoperator) are kept alongside as cross-checks.
//!
//! Modules, bottom-up:
//!
//! - [`linalg`]: fixed-size complex matrices, Jacobi eigensolver, PSD root.
//! - [`qstate`]: density matrices, X states, EWL constructors.
//! - [`noise`]: noise parameters and single-qubit maps.
//! - [`evolve`]: two-qubit composition.
//! - [`measures`]: Bell-function maximum and concurrence.
//! - [`analysis`]: sweeps, VSD root finding, B-versus-C traces.
//! - [`cli`]: figure and sweep commands with CSV/JSON writers.
//!
//! ```
//! use vsdsim::prelude::*;
//!
//! let cfg = SweepConfig::new(
//!     EwlParams::bell(Family::Phi, 0.91).unwrap(),
//!     NoiseParams::josephson_reference(),
//!     NoiseMode::Both,
//! );
//! let t = vsd_time(&cfg).unwrap().time().unwrap();
//! assert!((t - 3350.0).abs() < 100.0);
//! ```

// Negated comparisons are deliberate: they reject NaN along with
// out-of-range values. Index loops mirror the matrix formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod evolve;
pub mod linalg;
pub mod measures;
pub mod noise;
pub mod qstate;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::analysis::{
        b_vs_c_trace, bell_ad_closed_form, c_threshold, time_sweep, vsd_time,
        vsd_time_adiabatic_alt_form, vsd_time_adiabatic_closed_form, SweepConfig, SweepSeries,
        VsdOutcome,
    };
    pub use crate::error::{Error, Result};
    pub use crate::evolve::{apply_general, apply_x, TwoQubitMap};
    pub use crate::linalg::C64;
    pub use crate::measures::{
        bell_max_general, bell_max_x, concurrence_general, concurrence_x, BellResult,
    };
    pub use crate::noise::{
        adiabatic_defocus, mc_defocus_oracle, relaxation_rates, single_qubit_map, NoiseMode,
        NoiseParams,
    };
    pub use crate::qstate::{
        ewl_state, from_dense, to_dense, DensityMatrix, EwlParams, Family, XState,
    };
}
