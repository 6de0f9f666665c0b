//! Special functions and the symmetric eigenvalue kernel used by every
//! detector: normalized Hermite functions, the Bessel function `J0`, and
//! smallest-eigenvalue computation for real symmetric matrices.
//!
//! Everything here is a pure function of its inputs.

mod bessel;
mod eigen;
mod hermite;

pub use bessel::bessel_j0;
pub use eigen::{jacobi_eigen, min_eigenpair, min_eigenvalue, Eigen, SymMatrix};
pub use hermite::{hermite_u, MAX_HERMITE_MODE};
