//! Peres-Horodecki test for two-qubit states.

use crate::eigen::hermitian_eigenvalues;
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::qubit::partial_transpose_second;

/// Smallest eigenvalue of the partial transpose.
pub fn ppt_min_eigenvalue(rho: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(&partial_transpose_second(rho)?)?[0])
}

/// Sum of the magnitudes of the negative eigenvalues of the partial transpose.
pub fn negativity(rho: &ComplexMatrix) -> Result<f64> {
    let ev = hermitian_eigenvalues(&partial_transpose_second(rho)?)?;
    Ok(ev.iter().filter(|&&x| x < 0.0).map(|x| -x).sum())
}

/// Entangled iff the partial transpose has an eigenvalue below `−tol`.
pub fn is_entangled(rho: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(ppt_min_eigenvalue(rho)? < -tol)
}
