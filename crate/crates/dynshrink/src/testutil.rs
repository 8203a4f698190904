//! Dense linear-algebra reference implementations for unit tests.
//!
//! Deliberately naive O(n³) routines: the banded code is validated against
//! these on small problems, so they must stay obviously correct rather than
//! fast.

/// Dense lower Cholesky factor; `None` when the matrix is not positive
/// definite.
pub fn dense_cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solve `A x = b` through the dense Cholesky factor.
pub fn dense_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let l = dense_cholesky(a)?;
    let n = b.len();
    let mut y = vec![0.0f64; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i][k] * y[k];
        }
        y[i] = sum / l[i][i];
    }
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in (i + 1)..n {
            sum -= l[k][i] * x[k];
        }
        x[i] = sum / l[i][i];
    }
    Some(x)
}

/// Dense `D' W D` for a rectangular difference operator `d` (rows × cols) and
/// diagonal weights `w` (one per row).
pub fn dense_weighted_gram(d: &[Vec<f64>], w: &[f64]) -> Vec<Vec<f64>> {
    let rows = d.len();
    let cols = d[0].len();
    assert_eq!(rows, w.len());
    let mut out = vec![vec![0.0f64; cols]; cols];
    for (r, row) in d.iter().enumerate() {
        for i in 0..cols {
            if row[i] == 0.0 {
                continue;
            }
            for j in 0..cols {
                if row[j] != 0.0 {
                    out[i][j] += w[r] * row[i] * row[j];
                }
            }
        }
    }
    out
}

/// Dense matrix–vector product.
pub fn dense_matvec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(aij, xj)| aij * xj).sum())
        .collect()
}

/// Sample mean.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}
