//! Symmetric-group combinatorics: partitions, standard Young tableaux,
//! Jucys-Murphy operators and the Young orthogonal projectors they generate on
//! two-letter orbit spaces.

mod orbit;
mod partition;
mod projector;
mod tableau;

pub use orbit::{orbit_dimension, OrbitSpace};
pub use partition::{partitions_dominating, Partition, PartitionError};
pub use projector::{
    apply_projector, exact_squared_coefficients, irreducible_basis, jm_matrix, orbit_labels, projector_factors,
    projector_image, young_projector, AdaptedBasis, BasisLabel, Exact, ProjectorFactor, ProjectorMatrix, SymrepError,
    EXACT_LIMIT,
};
pub use tableau::{content_vector, standard_tableaux, ContentVector, StandardTableau, TableauError};

/// Irrep dimension by the hook-length formula.
pub fn dim_irrep(shape: &Partition) -> u128 {
    shape.dim_irrep()
}
