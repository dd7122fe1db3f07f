//! Dense real least squares by Householder QR.

/// Minimizes `‖A x - b‖₂` for a row-major `rows × cols` matrix with
/// `rows ≥ cols` and full column rank (the caller checks rank).
pub(crate) fn solve(a: &[f64], rows: usize, cols: usize, b: &[f64]) -> Vec<f64> {
    assert!(rows >= cols && a.len() == rows * cols && b.len() == rows);
    let mut r = a.to_vec();
    let mut qtb = b.to_vec();
    for k in 0..cols {
        let alpha_sq: f64 = (k..rows).map(|i| r[i * cols + k].powi(2)).sum();
        let alpha = alpha_sq.sqrt();
        if alpha == 0.0 {
            continue;
        }
        let alpha = if r[k * cols + k] > 0.0 { -alpha } else { alpha };
        let mut v: Vec<f64> = (k..rows).map(|i| r[i * cols + k]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        for j in k..cols {
            let dot: f64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| vi * r[(k + t) * cols + j])
                .sum();
            let f = 2.0 * dot / vnorm_sq;
            for (t, vi) in v.iter().enumerate() {
                r[(k + t) * cols + j] -= f * vi;
            }
        }
        let dot: f64 = v.iter().enumerate().map(|(t, vi)| vi * qtb[k + t]).sum();
        let f = 2.0 * dot / vnorm_sq;
        for (t, vi) in v.iter().enumerate() {
            qtb[k + t] -= f * vi;
        }
    }
    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let s: f64 = (k + 1..cols).map(|j| r[k * cols + j] * x[j]).sum();
        x[k] = (qtb[k] - s) / r[k * cols + k];
    }
    x
}
