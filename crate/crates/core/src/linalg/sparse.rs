use std::collections::BTreeMap;

use crate::linalg::DenseMatrix;
use crate::scalar::Scalar;

/// Compressed-sparse-row operator.
///
/// Entries are kept sorted by column inside each row, duplicates are summed at
/// construction and exact zeros are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T> {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> SparseOperator<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseOperator { rows, cols, indptr: vec![0; rows + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, T::one())))
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut per_row: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i}, {j}) outside {rows}x{cols}");
            let slot = per_row[i].entry(j).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for row in per_row {
            for (j, v) in row {
                if !v.is_zero() {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        SparseOperator { rows, cols, indptr, indices, values }
    }

    pub fn from_dense(m: &DenseMatrix<T>) -> Self {
        let mut trip = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    trip.push((i, j, m[(i, j)].clone()));
                }
            }
        }
        Self::from_triplets(m.rows(), m.cols(), trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &T)> {
        let range = self.indptr[i]..self.indptr[i + 1];
        self.indices[range.clone()].iter().copied().zip(&self.values[range])
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        (0..self.rows).flat_map(move |i| self.row_entries(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let range = self.indptr[i]..self.indptr[i + 1];
        match self.indices[range.clone()].binary_search(&j) {
            Ok(pos) => self.values[range.start + pos].clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row_entries(i).fold(T::zero(), |acc, (j, a)| acc + a.clone() * v[j].clone()))
            .collect()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in sparse matmul");
        let mut trip = Vec::new();
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for i in 0..self.rows {
            acc.clear();
            for (k, a) in self.row_entries(i) {
                for (j, b) in rhs.row_entries(k) {
                    let slot = acc.entry(j).or_insert_with(T::zero);
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
            trip.extend(std::mem::take(&mut acc).into_iter().map(|(j, v)| (i, j, v)));
        }
        Self::from_triplets(self.rows, rhs.cols, trip)
    }

    fn combine(&self, rhs: &Self, sign: T) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let trip = self
            .triplets()
            .map(|(i, j, v)| (i, j, v.clone()))
            .chain(rhs.triplets().map(|(i, j, v)| (i, j, v.clone() * sign.clone())));
        Self::from_triplets(self.rows, self.cols, trip)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, T::one())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, -T::one())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_triplets(self.rows, self.cols, self.triplets().map(|(i, j, v)| (i, j, v.clone() * s.clone())))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(i, j, v)| (j, i, v.conj())))
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc + v.abs_sq()).sqrt()
    }

    /// Frobenius norm of `self − self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.sub(&self.adjoint()).frobenius_norm()
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && self.hermiticity_defect() == 0.0
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let mut position = vec![usize::MAX; self.cols.max(self.rows)];
        for (new, &old) in indices.iter().enumerate() {
            position[old] = new;
        }
        let mut trip = Vec::new();
        for (new_i, &old_i) in indices.iter().enumerate() {
            for (old_j, v) in self.row_entries(old_i) {
                let new_j = position[old_j];
                if new_j != usize::MAX {
                    trip.push((new_i, new_j, v.clone()));
                }
            }
        }
        Self::from_triplets(indices.len(), indices.len(), trip)
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v.clone();
        }
        m
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseOperator<U> {
        SparseOperator::from_triplets(self.rows, self.cols, self.triplets().map(|(i, j, v)| (i, j, f(v))))
    }
}
