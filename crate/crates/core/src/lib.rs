//! Spin-1/2 in a uniformly rotating magnetic field: closed-form evolution in
//! the instantaneous eigenbasis, a complex non-adiabatic, non-cyclic
//! geometric phase, period commensurability, and RK4 oracles that check
//! every closed form independently.

pub mod cyclicity;
pub mod error;
pub mod evolution;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod phases;

pub use cyclicity::{
    commensurate_ratio, hamiltonian_period, solve_commensurate, state_period, Branch,
    CommensurateSolution,
};
pub use error::{Error, Result};
pub use evolution::{amplitudes, return_probability_at_period, state, AmplitudePair};
pub use model::{
    eigenstate, eigenvalue, field_vector, hamiltonian, DerivedScales, Matrix2, ModelParams, Spinor,
};
pub use oracle::{
    integrate_coefficients, integrate_lab_frame, max_deviation, sample_closed_form,
    IntegratorConfig, Trajectory,
};
pub use phases::{
    adiabatic_limit_check, adiabatic_reference, berry_phase, decompose, dynamical_phase,
    dynamical_phase_quadrature, gauge_b_fix, nonadiabatic_limit_check, total_phase,
    PhaseDecomposition,
};
