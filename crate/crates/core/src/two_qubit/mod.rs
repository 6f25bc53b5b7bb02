//! Magnetic spin pair coupled by the dipole interaction.

mod gates;
mod hamiltonian;
mod units;

pub use gates::*;
pub use hamiltonian::{
    basis, build_pair_hamiltonian, frame_rotation, level_energies, pulse_unitary_exact, rf_coupling, singlet,
    static_hamiltonian, symmetric, FreeEvolution, RfPulse, SpinPairConfig, BASIS_LABELS, DIM, MAX_COUPLING_RATIO,
    S00, S01, S10, S11,
};
pub use units::*;
