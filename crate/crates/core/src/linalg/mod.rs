//! Dense and sparse linear algebra over [`Scalar`](crate::scalar::Scalar).

mod dense;
mod eigen;
mod sparse;

pub use dense::DenseMatrix;
pub use eigen::{symmetric_eigen, EigenError, SymmetricEigen};
pub use sparse::SparseOperator;
