//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by the implicit-shift QL iteration (EISPACK `tred2`/`tql2`).

#![allow(clippy::needless_range_loop)]

use crate::linalg::DenseMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen<F> {
    /// Ascending.
    pub eigenvalues: Vec<F>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: DenseMatrix<F>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EigenError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("QL iteration did not converge for eigenvalue {0}")]
    NoConvergence(usize),
}

/// Diagonalizes a real symmetric matrix. Only the lower triangle is read.
pub fn symmetric_eigen<F: Real>(a: &DenseMatrix<F>) -> Result<SymmetricEigen<F>, EigenError> {
    if !a.is_square() {
        return Err(EigenError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(SymmetricEigen { eigenvalues: Vec::new(), eigenvectors: DenseMatrix::zeros(0, 0) });
    }
    let mut v: Vec<Vec<F>> = (0..n).map(|i| (0..n).map(|j| a[(i.max(j), i.min(j))]).collect()).collect();
    let mut d = vec![F::zero(); n];
    let mut e = vec![F::zero(); n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = order.iter().map(|&k| d[k]).collect();
    let eigenvectors = DenseMatrix::from_fn(n, n, |i, k| v[i][order[k]]);
    Ok(SymmetricEigen { eigenvalues, eigenvectors })
}

fn tred2<F: Real>(v: &mut [Vec<F>], d: &mut [F], e: &mut [F]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1][..n]);

    for i in (1..n).rev() {
        let mut scale = F::zero();
        let mut h = F::zero();
        for dk in d.iter().take(i) {
            scale = scale + dk.abs();
        }
        if scale == F::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = F::zero();
                v[j][i] = F::zero();
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk = *dk / scale;
                h = h + *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > F::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = F::zero();
            }

            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in (j + 1)..i {
                    g = g + v[k][j] * d[k];
                    e[k] = e[k] + v[k][j] * f;
                }
                e[j] = g;
            }
            f = F::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] = v[k][j] - (f * e[k] + g * d[k]);
                }
                d[j] = v[i - 1][j];
                v[i][j] = F::zero();
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for i in 0..n.saturating_sub(1) {
        v[n - 1][i] = v[i][i];
        v[i][i] = F::one();
        let h = d[i + 1];
        if h != F::zero() {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = F::zero();
                for k in 0..=i {
                    g = g + v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] = v[k][j] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = F::zero();
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = F::zero();
    }
    v[n - 1][n - 1] = F::one();
    e[0] = F::zero();
}

fn tql2<F: Real>(v: &mut [Vec<F>], d: &mut [F], e: &mut [F]) -> Result<(), EigenError> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = F::zero();

    let two = F::from_int(2);
    let mut f = F::zero();
    let mut tst1 = F::zero();
    let eps = F::epsilon();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        // e[n-1] is zero, so m < n always holds here.
        let m = m.min(n - 1);

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(EigenError::NoConvergence(l));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(F::one());
                if p < F::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = F::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = F::zero();
                let mut s2 = F::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = F::zero();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &DenseMatrix<f64>, eig: &SymmetricEigen<f64>) -> f64 {
        let n = a.rows();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let v = eig.eigenvectors.column(k);
            let av = a.matvec(&v);
            let r: f64 = av.iter().zip(&v).map(|(x, y)| (x - eig.eigenvalues[k] * y).powi(2)).sum();
            worst = worst.max(r.sqrt());
        }
        worst
    }

    #[test]
    fn zero_matrix() {
        let eig = symmetric_eigen(&DenseMatrix::<f64>::zeros(4, 4)).unwrap();
        assert_eq!(eig.eigenvalues, vec![0.0; 4]);
    }

    #[test]
    fn two_by_two() {
        let a = DenseMatrix::<f64>::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let eig = symmetric_eigen(&a).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert!(residual(&a, &eig) < 1e-14);
    }

    #[test]
    fn one_by_one_and_f32() {
        let eig = symmetric_eigen(&DenseMatrix::from_fn(1, 1, |_, _| 5.0f32)).unwrap();
        assert_eq!(eig.eigenvalues, vec![5.0]);
    }

    #[test]
    fn path_graph_laplacian() {
        // Eigenvalues of the open-chain adjacency are 2cos(πk/(n+1)).
        let n = 9;
        let a = DenseMatrix::<f64>::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
        let eig = symmetric_eigen(&a).unwrap();
        let mut expect: Vec<f64> =
            (1..=n).map(|k| 2.0 * (std::f64::consts::PI * k as f64 / (n + 1) as f64).cos()).collect();
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, y) in eig.eigenvalues.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-13);
        }
        assert!(residual(&a, &eig) < 1e-13);
    }

    #[test]
    fn not_square() {
        assert_eq!(symmetric_eigen(&DenseMatrix::<f64>::zeros(2, 3)).unwrap_err(), EigenError::NotSquare(2, 3));
    }
}
