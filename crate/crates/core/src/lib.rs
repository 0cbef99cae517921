//! Symmetry-adapted exact diagonalization of the one-dimensional Hubbard
//! chain: fermionic configuration basis, symmetric-group projectors,
//! translation orbits, the half-filling Schur-Weyl decomposition and the
//! Hamiltonian with its SU(2)×SU(2) generators.

pub mod cli;
pub mod fock;
pub mod hubbard;
pub mod linalg;
pub mod scalar;
pub mod swd;
pub mod symrep;
pub mod translation;

use num_complex::Complex;
use num_rational::Ratio;

/// Exact rational scalar used for projector arithmetic.
pub type Exact = Ratio<i128>;
pub type Complex64 = Complex<f64>;

pub type Operator64 = linalg::SparseOperator<f64>;
pub type Operator32 = linalg::SparseOperator<f32>;
pub type ExactOperator = linalg::SparseOperator<Exact>;
pub type ComplexOperator = linalg::SparseOperator<Complex64>;

pub type Matrix64 = linalg::DenseMatrix<f64>;
pub type ExactMatrix = linalg::DenseMatrix<Exact>;

pub type Projector64 = symrep::ProjectorMatrix<f64>;
pub type ExactProjector = symrep::ProjectorMatrix<Exact>;
