//! Small dense helpers shared by the spectral routines.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues (ascending) and matching eigenvector columns of a hermitian
/// matrix.
pub(crate) fn hermitian_eigen(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// `f(M)` for hermitian `M`, applied through its spectral decomposition.
pub(crate) fn hermitian_function(
    m: &DMatrix<Complex64>,
    f: impl Fn(f64) -> Complex64,
) -> DMatrix<Complex64> {
    let (values, v) = hermitian_eigen(m);
    let n = values.len();
    let d = DMatrix::from_fn(n, n, |r, c| if r == c { f(values[r]) } else { Complex64::new(0.0, 0.0) });
    &v * d * v.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_sorted_and_reconstruct() {
        let i = Complex64::new(0.0, 1.0);
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(2.0, 0.0), i, -i, Complex64::new(2.0, 0.0)],
        );
        let (vals, _) = hermitian_eigen(&m);
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
        let back = hermitian_function(&m, |x| Complex64::new(x, 0.0));
        assert!(crate::fock::max_abs(&(back - m)) < 1e-14);
    }
}
