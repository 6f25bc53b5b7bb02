//! Dense complex linear algebra and time integration, generic over the real
//! scalar type.

mod eigen;
mod matrix;
mod rk4;
mod scalar;
mod state;

pub use eigen::{hermitian_eigs, null_space, spectral_norm, svd, unitary_exp, Eigen, Svd};
pub use matrix::{ComplexMatrix, MAX_DIM};
pub use rk4::{evolve_rk4, evolve_rk4_inspect, rk4_step, OdeState, Stepping, Trajectory};
pub use scalar::{Complex, Real};
pub use state::StateVector;
