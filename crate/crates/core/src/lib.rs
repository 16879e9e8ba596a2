//! Momentum-space quantum walks of a spinor condensate in a resonantly kicked
//! optical lattice.
//!
//! A walker is a two-component wavefunction on integer momenta. One step is a
//! coin on the internal state, a spin-dependent kick `e^{-i sigma_z k cos theta}`
//! and free evolution over one kick period. At the Talbot time `tau = 4 pi`
//! and zero quasi-momentum the free evolution is the identity and the walk is
//! ballistic; finite quasi-momentum spreads are handled by ensemble
//! averaging.
//!
//! The numerical core is generic over [`Real`] (`f32`, `f64`); the closed-form
//! coefficients are exact rationals. Aliases below fix the common `f64` case.

pub mod analysis;
pub mod analytic;
pub mod bessel;
pub mod ensemble;
pub mod error;
pub mod evolution;
pub mod gates;
pub mod lattice;
pub mod scalar;

pub use analysis::{
    central_fraction, compare_walks, fit_power_law, mean_energy, mean_energy_of_totals, side_peak_mass,
    ComparisonResult, EnergySeries, PowerLawFit,
};
pub use analytic::{
    analytic_distribution, coefficients_closed_form, coefficients_recursion, AnalyticCoefficients,
    LaurentPolynomial,
};
pub use bessel::{bessel_j, BesselTable};
pub use ensemble::{ensemble_distribution, sample_betas, QuasiMomentumEnsemble};
pub use error::{Error, Result};
pub use evolution::{
    apply_coin, apply_free, apply_kick, quadrature_kick_oracle, run_walk, talbot_time, CoinPosition,
    DistributionHistory, KickParams, WalkProtocol, Walker,
};
pub use gates::{hadamard_gate, light_shift_phase, lightshift_coin, mw_gate, w_gate, y_gate, CoinGate};
pub use lattice::{make_lattice, ratchet_state, MomentumLattice, RatchetSpec, Spin, SpinorWavefunction};
pub use scalar::Real;

/// Matrix type of [`DistributionHistory::to_matrix`] and [`compare_walks`].
pub use ndarray;
pub use num_complex::{self, Complex};

pub type State = SpinorWavefunction<f64>;
pub type Gate = CoinGate<f64>;
pub type Kick = KickParams<f64>;
pub type Protocol = WalkProtocol<f64>;
pub type History = DistributionHistory<f64>;
pub type ExactLaurent = LaurentPolynomial<num_rational::BigRational>;
