//! Jucys-Murphy operators and Young orthogonal-basis projectors on orbit spaces.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::{content_vector, partitions_dominating, standard_tableaux, OrbitSpace, Partition, StandardTableau};
use crate::linalg::{DenseMatrix, SparseOperator};
use crate::scalar::{exact_to_f64, Scalar};

/// Exact rational type used for projector arithmetic.
pub type Exact = Ratio<i128>;

/// Orbits up to this many letters are projected in exact arithmetic.
pub const EXACT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymrepError {
    #[error("Jucys-Murphy index {j} outside 2..={n}")]
    NodeOutOfRange { j: usize, n: usize },
    #[error("tableau {tableau} does not have shape {shape}")]
    ShapeMismatch { shape: Partition, tableau: String },
    #[error("shape {shape} does not occur in the orbit of weight {weight:?}")]
    NotInOrbit { shape: Partition, weight: (usize, usize) },
    #[error("degenerate denominator at node {j}: content {content} repeated")]
    DegenerateDenominator { j: usize, content: i64 },
    #[error("projector image vanished on every orbit word for {0}")]
    EmptyImage(String),
}

/// Matrix of `M̂_j = Σ_{j'<j} (j, j')` acting by place permutation on `space`.
pub fn jm_matrix<T: Scalar>(j: usize, space: &OrbitSpace) -> Result<SparseOperator<T>, SymrepError> {
    let n = space.len();
    if j < 2 || j > n {
        return Err(SymrepError::NodeOutOfRange { j, n });
    }
    let dim = space.dim();
    let trip = (0..dim)
        .flat_map(|i| (1..j).map(move |jp| (i, jp)))
        .map(|(i, jp)| (space.transpose_index(i, jp, j), i, T::one()));
    Ok(SparseOperator::from_triplets(dim, dim, trip))
}

fn apply_jm<T: Scalar>(j: usize, space: &OrbitSpace, v: &[T]) -> Vec<T> {
    (0..space.dim())
        .map(|i| (1..j).fold(T::zero(), |acc, jp| acc + v[space.transpose_index(i, jp, j)].clone()))
        .collect()
}

/// One factor `(M̂_j − c·I) / (m_j(y) − c)` of the projector product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectorFactor {
    pub j: usize,
    pub shift: i64,
    pub denominator: i64,
}

/// Factors of `e^λ_{yy}`: for each `j ≥ 2`, every way of adding `j` to `y_{j−1}`
/// other than the one that gives `y_j`.
pub fn projector_factors(y: &StandardTableau) -> Result<Vec<ProjectorFactor>, SymrepError> {
    let m = content_vector(y);
    let mut out = Vec::new();
    for j in 2..=y.size() {
        let prev = y.restricted(j - 1).shape();
        let target = y.position(j);
        let mut seen = Vec::new();
        for (r, c) in prev.addable_cells() {
            if (r, c) == target {
                continue;
            }
            let content = c as i64 - r as i64;
            let denominator = m.get(j) - content;
            if denominator == 0 || seen.contains(&content) {
                return Err(SymrepError::DegenerateDenominator { j, content });
            }
            seen.push(content);
            out.push(ProjectorFactor { j, shift: content, denominator });
        }
    }
    Ok(out)
}

/// Applies the projector product to a vector over the orbit basis.
pub fn apply_projector<T: Scalar>(factors: &[ProjectorFactor], space: &OrbitSpace, v: &[T]) -> Vec<T> {
    let mut cur = v.to_vec();
    for f in factors {
        let mv = apply_jm(f.j, space, &cur);
        let shift = T::from_int(f.shift);
        let den = T::from_int(f.denominator);
        cur = mv.into_iter().zip(&cur).map(|(a, b)| (a - shift.clone() * b.clone()) / den.clone()).collect();
    }
    cur
}

/// Dense projector `e^λ_{yy}` on an orbit space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorMatrix<T> {
    pub shape: Partition,
    pub tableau: StandardTableau,
    pub matrix: DenseMatrix<T>,
}

fn check_label(shape: &Partition, y: &StandardTableau, space: &OrbitSpace) -> Result<(), SymrepError> {
    if &y.shape() != shape {
        return Err(SymrepError::ShapeMismatch { shape: shape.clone(), tableau: y.to_string() });
    }
    let (a, b) = space.weight();
    if !shape.dominates(&Partition::from_weight(&[a, b])) {
        return Err(SymrepError::NotInOrbit { shape: shape.clone(), weight: space.weight() });
    }
    Ok(())
}

pub fn young_projector<T: Scalar>(
    shape: &Partition,
    y: &StandardTableau,
    space: &OrbitSpace,
) -> Result<ProjectorMatrix<T>, SymrepError> {
    check_label(shape, y, space)?;
    let factors = projector_factors(y)?;
    let dim = space.dim();
    let columns: Vec<Vec<T>> = (0..dim)
        .map(|k| {
            let unit: Vec<T> = (0..dim).map(|i| if i == k { T::one() } else { T::zero() }).collect();
            apply_projector(&factors, space, &unit)
        })
        .collect();
    Ok(ProjectorMatrix { shape: shape.clone(), tableau: y.clone(), matrix: DenseMatrix::from_columns(dim, &columns) })
}

/// Column label `(λ, y)` of an irreducible basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub shape: Partition,
    pub tableau: StandardTableau,
    /// 1-based position of `tableau` in the last-letter order of its shape.
    pub index: usize,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:T{}", self.shape, self.index)
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Every `(λ, y)` label occurring in the orbit, in output column order.
pub fn orbit_labels(space: &OrbitSpace) -> Vec<BasisLabel> {
    let (a, b) = space.weight();
    partitions_dominating(a + b, &[a, b], 2)
        .into_iter()
        .flat_map(|shape| {
            standard_tableaux(&shape).into_iter().enumerate().map(move |(i, tableau)| BasisLabel {
                shape: shape.clone(),
                tableau,
                index: i + 1,
            })
        })
        .collect()
}

/// Unnormalized image of `e^λ_{yy}`, sign fixed so the first nonzero entry is positive.
pub fn projector_image<T: Scalar + PartialOrd>(label: &BasisLabel, space: &OrbitSpace) -> Result<Vec<T>, SymrepError> {
    check_label(&label.shape, &label.tableau, space)?;
    let factors = projector_factors(&label.tableau)?;
    let dim = space.dim();
    for k in 0..dim {
        let unit: Vec<T> = (0..dim).map(|i| if i == k { T::one() } else { T::zero() }).collect();
        let image = apply_projector(&factors, space, &unit);
        if let Some(first) = image.iter().find(|v| !v.is_zero()) {
            let flip = *first < T::zero();
            return Ok(image.into_iter().map(|v| if flip { -v } else { v }).collect());
        }
    }
    Err(SymrepError::EmptyImage(label.to_string()))
}

/// Orthonormal irreducible basis of an orbit space.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedBasis {
    pub weight: (usize, usize),
    /// Orbit words, row order of `coefficients`.
    pub words: Vec<u32>,
    pub labels: Vec<BasisLabel>,
    /// `coefficients[(row, col)]`: component of vector `col` on word `row`.
    pub coefficients: DenseMatrix<f64>,
}

impl AdaptedBasis {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.coefficients.column(k)
    }
}

/// Images normalized to unit length. Exact arithmetic up to [`EXACT_LIMIT`] letters.
pub fn irreducible_basis(space: &OrbitSpace) -> Result<AdaptedBasis, SymrepError> {
    let labels = orbit_labels(space);
    let columns: Vec<Vec<f64>> = if space.len() <= EXACT_LIMIT {
        labels
            .iter()
            .map(|l| projector_image::<Exact>(l, space).map(|v| normalize_exact(&v)))
            .collect::<Result<_, _>>()?
    } else {
        labels.iter().map(|l| projector_image::<f64>(l, space).map(|v| normalize(&v))).collect::<Result<_, _>>()?
    };
    Ok(AdaptedBasis {
        weight: space.weight(),
        words: space.words().to_vec(),
        labels,
        coefficients: DenseMatrix::from_columns(space.dim(), &columns),
    })
}

/// Squared normalized coefficients `c_i² / Σ c²`, exactly.
pub fn exact_squared_coefficients(image: &[Exact]) -> Vec<Exact> {
    let norm_sq = image.iter().fold(Exact::from_integer(0), |acc, v| acc + v * v);
    image.iter().map(|v| v * v / norm_sq).collect()
}

fn normalize_exact(image: &[Exact]) -> Vec<f64> {
    exact_squared_coefficients(image)
        .iter()
        .zip(image)
        .map(|(sq, v)| exact_to_f64(sq).sqrt().copysign(exact_to_f64(v)))
        .collect()
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn jm_two_sites_is_exchange() {
        let m = jm_matrix::<i64>(2, &OrbitSpace::new((1, 1))).unwrap();
        assert_eq!(m.to_dense(), DenseMatrix::from_fn(2, 2, |i, j| (i != j) as i64));
        assert!(jm_matrix::<i64>(1, &OrbitSpace::new((1, 1))).is_err());
        assert!(jm_matrix::<i64>(3, &OrbitSpace::new((1, 1))).is_err());
    }

    #[test]
    fn jm_commute_n3() {
        let o = OrbitSpace::new((2, 1));
        let m2 = jm_matrix::<i64>(2, &o).unwrap();
        let m3 = jm_matrix::<i64>(3, &o).unwrap();
        assert_eq!(m2.commutator(&m3).nnz(), 0);
    }

    #[test]
    fn two_site_symmetrizers() {
        let o = OrbitSpace::new((1, 1));
        let sym = young_projector::<Exact>(&Partition::two_row(2, 0), &tab(&[&[1, 2]]), &o).unwrap();
        let half = Exact::new(1, 2);
        assert_eq!(sym.matrix, DenseMatrix::from_fn(2, 2, |_, _| half));
        let o = OrbitSpace::new((1, 1));
        let anti = young_projector::<Exact>(&Partition::two_row(2, 1), &tab(&[&[1], &[2]]), &o).unwrap();
        assert_eq!(anti.matrix, DenseMatrix::from_fn(2, 2, |i, j| if i == j { half } else { -half }));
    }

    #[test]
    fn factors_for_2x2() {
        // 12/34: j=2 skips (1,0) with content −1, j=3 skips (0,2) with content 2,
        // j=4 skips (0,2) and (2,0) with contents ±2.
        let f = projector_factors(&tab(&[&[1, 2], &[3, 4]])).unwrap();
        let got: Vec<(usize, i64, i64)> = f.iter().map(|f| (f.j, f.shift, f.denominator)).collect();
        assert_eq!(got, vec![(2, -1, 2), (3, 2, -3), (4, 2, -2), (4, -2, 2)]);
    }

    #[test]
    fn symmetric_image_is_uniform() {
        let o = OrbitSpace::new((2, 2));
        let basis = irreducible_basis(&o).unwrap();
        let c0 = basis.column(0);
        for v in c0 {
            assert!((v - 6f64.sqrt() / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn label_errors() {
        let o = OrbitSpace::new((3, 1));
        let y = tab(&[&[1, 2], &[3, 4]]);
        assert!(matches!(
            young_projector::<f64>(&Partition::two_row(4, 2), &y, &o),
            Err(SymrepError::NotInOrbit { .. })
        ));
        assert!(matches!(
            young_projector::<f64>(&Partition::two_row(4, 1), &y, &o),
            Err(SymrepError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn all_same_word() {
        let o = OrbitSpace::new((5, 0));
        let b = irreducible_basis(&o).unwrap();
        assert_eq!(b.labels.len(), 1);
        assert_eq!(b.coefficients[(0, 0)], 1.0);
    }

    #[test]
    fn labels_serialize() {
        let labels = orbit_labels(&OrbitSpace::new((3, 1)));
        let got: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(got, ["{4}:T1", "{3,1}:T1", "{3,1}:T2", "{3,1}:T3"]);
    }
}
