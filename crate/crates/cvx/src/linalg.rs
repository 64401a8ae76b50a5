//! Small dense-linear-algebra helpers shared by the physics modules.
//!
//! Everything here wraps `nalgebra`'s symmetric/Hermitian eigensolver, which
//! is the single numerical kernel the crate relies on: symplectic spectra,
//! entropies, unitary exponentials and positivity certificates all reduce to
//! it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest entry of |M - Mᵀ| — zero for exactly symmetric matrices.
pub(crate) fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Replace M by (M + Mᵀ)/2. Used before eigensolves so that roundoff from
/// congruences S·M·Sᵀ cannot push the solver off the symmetric branch.
pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

/// (M + M†)/2 for complex matrices.
pub(crate) fn hermitize(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).map(|z| 0.5 * z)
}

/// Promote a real matrix to a complex one.
pub(crate) fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub(crate) fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Eigenvalues of a complex Hermitian matrix, ascending. The input is
/// hermitized first so callers may pass matrices carrying O(ε) asymmetry.
pub(crate) fn herm_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let eig = hermitize(m).symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Full Hermitian eigendecomposition (values ascending, columns matching).
pub(crate) fn herm_eigen(m: &DMatrix<Complex64>) -> (DVector<f64>, DMatrix<Complex64>) {
    let eig = hermitize(m).symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut vecs = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Symmetric positive-definite square root M^{1/2}.
pub(crate) fn spd_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = m.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::NotPositiveDefinite(min));
    }
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let mut root = &eig.eigenvectors * d * eig.eigenvectors.transpose();
    symmetrize(&mut root);
    Ok(root)
}

/// exp(i·t·H) for Hermitian H, via the spectral decomposition. The result is
/// unitary to solver precision.
pub(crate) fn unitary_exp_i(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let eig = hermitize(h).symmetric_eigen();
    let phases = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&lam| Complex64::from_polar(1.0, t * lam)),
    );
    let d = DMatrix::from_diagonal(&phases);
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn spd_sqrt_squares_back() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.5]);
        let r = spd_sqrt(&m).unwrap();
        let back = &r * &r;
        assert_abs_diff_eq!((back - m).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn spd_sqrt_rejects_indefinite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(spd_sqrt(&m), Err(Error::NotPositiveDefinite(_))));
    }

    #[test]
    fn unitary_exp_is_unitary() {
        // i·σ_y rotation: exp(i t σ_y) has determinant 1 and U†U = 1.
        let h = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let u = unitary_exp_i(&h, 0.7);
        let id = &u * u.adjoint();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(id[(i, j)].re, want, epsilon = 1e-12);
                assert_abs_diff_eq!(id[(i, j)].im, 0.0, epsilon = 1e-12);
            }
        }
    }
}
