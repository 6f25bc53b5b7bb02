//! Simulation of dark-state (coherent population trapping) qubits in a driven
//! F=1 to F'=1 atom, with adiabatic single-qubit flips and magnetic
//! dipole-dipole two-qubit gates.
//!
//! The [`numerics`] layer is generic over the scalar type; the physics
//! modules work in `f64` through the aliases below. Units: hbar = 1 and all
//! frequencies are angular.

pub mod atom;
pub mod dynamics;
mod error;
pub mod numerics;
pub mod single_qubit;
pub mod stateprep;
pub mod two_qubit;

pub use error::{Error, Result};

/// Complex scalar used by the physics modules.
pub type C64 = numerics::Complex<f64>;
/// Dense complex matrix used by the physics modules.
pub type CMatrix = numerics::ComplexMatrix<f64>;
/// Density operator over the atomic or spin-pair basis.
pub type DensityMatrix = numerics::ComplexMatrix<f64>;
/// Pure state over the atomic or spin-pair basis.
pub type Ket = numerics::StateVector<f64>;
/// Time series of pure states.
pub type KetTrajectory = numerics::Trajectory<Ket, f64>;
/// Time series of density matrices.
pub type DensityTrajectory = numerics::Trajectory<DensityMatrix, f64>;

pub(crate) fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
