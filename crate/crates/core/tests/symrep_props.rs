use std::collections::HashMap;

use hubbard_swd::linalg::DenseMatrix;
use hubbard_swd::symrep::{
    content_vector, irreducible_basis, jm_matrix, orbit_dimension, orbit_labels, standard_tableaux, young_projector,
    OrbitSpace, Partition,
};
use hubbard_swd::{Exact, ExactProjector, Projector64};
use proptest::prelude::*;

/// Standard tableau count by peeling corners: `f(λ) = Σ f(λ − corner)`.
fn branching_count(parts: &[usize], memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
    if parts.iter().all(|&p| p == 0) {
        return 1;
    }
    if let Some(&v) = memo.get(parts) {
        return v;
    }
    let mut total = 0;
    for r in 0..parts.len() {
        let below = parts.get(r + 1).copied().unwrap_or(0);
        if parts[r] > below {
            let mut smaller = parts.to_vec();
            smaller[r] -= 1;
            total += branching_count(&smaller, memo);
        }
    }
    memo.insert(parts.to_vec(), total);
    total
}

#[test]
fn tableau_counts_equal_hook_lengths() {
    let mut memo = HashMap::new();
    for n in 1..=10 {
        let shapes = Partition::all(n);
        let mut square_sum = 0u128;
        for shape in &shapes {
            let syt = standard_tableaux(shape).len() as u128;
            assert_eq!(syt, shape.dim_irrep(), "hook length, {shape}");
            assert_eq!(syt, branching_count(shape.parts(), &mut memo), "branching, {shape}");
            square_sum += syt * syt;
        }
        assert_eq!(square_sum, (1..=n as u128).product::<u128>(), "Σ f² = n!, n={n}");
    }
}

#[test]
fn partition_counts() {
    let p: Vec<usize> = (1..=10).map(|n| Partition::all(n).len()).collect();
    assert_eq!(p, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
}

fn projectors(space: &OrbitSpace) -> Vec<Projector64> {
    orbit_labels(space).iter().map(|l| young_projector::<f64>(&l.shape, &l.tableau, space).unwrap()).collect()
}

fn two_letter_weights(max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |b| (n - b, b))).collect()
}

#[test]
fn projector_algebra_up_to_eight_letters() {
    for weight in two_letter_weights(8) {
        let space = OrbitSpace::new(weight);
        let dim = space.dim();
        assert_eq!(dim as u128, orbit_dimension(weight));
        let ps = projectors(&space);
        assert_eq!(ps.len(), dim, "label count, {weight:?}");
        let mut sum = DenseMatrix::<f64>::zeros(dim, dim);
        for (i, p) in ps.iter().enumerate() {
            let e = &p.matrix;
            assert!(e.matmul(e).sub(e).max_abs() <= 1e-12, "idempotence {weight:?} {}", p.tableau);
            for q in &ps[i + 1..] {
                assert!(e.matmul(&q.matrix).max_abs() <= 1e-12, "orthogonality {weight:?}");
                assert!(q.matrix.matmul(e).max_abs() <= 1e-12, "orthogonality {weight:?}");
            }
            let m = content_vector(&p.tableau);
            for j in 2..=space.len() {
                let jm = jm_matrix::<f64>(j, &space).unwrap().to_dense();
                let dev = jm.matmul(e).sub(&e.scale(m.get(j) as f64)).max_abs();
                assert!(dev <= 1e-12, "JM eigenvector j={j} {weight:?} {}", p.tableau);
            }
            sum = sum.add(e);
        }
        assert!(sum.sub(&DenseMatrix::identity(dim)).max_abs() <= 1e-12, "completeness {weight:?}");
    }
}

#[test]
fn exact_projectors_are_idempotent_and_complete() {
    for weight in two_letter_weights(6) {
        let space = OrbitSpace::new(weight);
        let dim = space.dim();
        let zero = Exact::from_integer(0);
        let mut sum = DenseMatrix::<Exact>::zeros(dim, dim);
        for l in orbit_labels(&space) {
            let p: ExactProjector = young_projector(&l.shape, &l.tableau, &space).unwrap();
            assert_eq!(p.matrix.matmul(&p.matrix), p.matrix, "{weight:?} {}", l.tableau);
            sum = sum.add(&p.matrix);
        }
        let id = DenseMatrix::<Exact>::identity(dim);
        assert_eq!(sum, id);
        assert_ne!(id[(0, 0)], zero);
    }
}

#[test]
fn irreducible_bases_are_orthogonal() {
    for weight in two_letter_weights(8) {
        let space = OrbitSpace::new(weight);
        let b = irreducible_basis(&space).unwrap();
        let gram = b.coefficients.transpose().matmul(&b.coefficients);
        let dev = gram.sub(&DenseMatrix::identity(space.dim())).max_abs();
        assert!(dev <= 1e-12, "{weight:?}: {dev}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Projecting a random vector onto every label and summing gives it back,
    /// and the pieces are mutually orthogonal.
    #[test]
    fn random_vectors_decompose(a in 0usize..=5, b in 0usize..=4, seed in prop::collection::vec(-1.0f64..1.0, 126)) {
        prop_assume!(a + b >= 1);
        let space = OrbitSpace::new((a, b));
        let v: Vec<f64> = seed.iter().take(space.dim()).copied().collect();
        let pieces: Vec<Vec<f64>> = projectors(&space).iter().map(|p| p.matrix.matvec(&v)).collect();
        for (i, x) in v.iter().enumerate() {
            let back: f64 = pieces.iter().map(|p| p[i]).sum();
            prop_assert!((back - x).abs() <= 1e-12);
        }
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let dot: f64 = pieces[i].iter().zip(&pieces[j]).map(|(x, y)| x * y).sum();
                prop_assert!(dot.abs() <= 1e-12);
            }
        }
    }
}
