use nalgebra::{DMatrix, DVector};

/// Least squares with columns scaled to unit norm and an SVD cut at `rcond`.
pub(crate) fn solve(rows: &[Vec<f64>], rhs: &[f64], rcond: f64) -> Option<Vec<f64>> {
    let m = rows.len();
    let n = rows.first()?.len();
    let mut a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let mut scale = vec![1.0; n];
    for j in 0..n {
        let s = a.column(j).norm();
        if s > 0.0 {
            scale[j] = s;
            a.column_mut(j).scale_mut(1.0 / s);
        }
    }
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let x = svd
        .solve(&DVector::from_column_slice(rhs), rcond * smax)
        .ok()?;
    Some((0..n).map(|j| x[j] / scale[j]).collect())
}
