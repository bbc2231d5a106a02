//! Fine-structure levels of hydrogen-like atoms and first-order energy shifts
//! from axial perturbations (linear, quadratic, displaced-quadratic,
//! generalized van der Waals, Lennard-Jones wall) in the coupled angular
//! basis |n l j m>.
//!
//! The closed-form results live in [`perturb`]; every one of them can be
//! cross-checked against [`oracle`], which assembles the perturbation matrix
//! in each degenerate subspace by direct 3D quadrature and diagonalizes it,
//! sharing no code path with the closed forms.
//!
//! Angular-momentum algebra ([`angular`]) is exact: Wigner 3j symbols and
//! Gaunt coefficients are carried as sign * sqrt(rational) with
//! arbitrary-precision integers, so parity and selection-rule zeros are
//! exact zeros.

pub mod angular;
pub mod cli;
pub mod constants;
pub mod harmonics;
pub mod oracle;
pub mod perturb;
pub mod quadrature;
pub mod radial;
pub mod states;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
