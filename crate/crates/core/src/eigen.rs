//! Eigenvalues of small Hermitian matrices by cyclic complex Jacobi rotations.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::TOL_HERM;

const MAX_SWEEPS: usize = 100;
const REL_OFFDIAG_STOP: f64 = 1e-14;

/// All eigenvalues of a Hermitian matrix in ascending order.
///
/// Degenerate eigenvalues appear as repeated entries. Inputs whose Hermitian
/// defect exceeds [`TOL_HERM`] are rejected; within tolerance the Hermitian
/// part `(M + M†)/2` is diagonalized.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::NonFinite("eigenvalue input"));
    }
    let defect = m.hermitian_defect();
    if defect > TOL_HERM {
        return Err(Error::NotHermitian { defect });
    }
    Ok(jacobi_eigenvalues(m.hermitian_part()))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?[0])
}

/// `true` iff every eigenvalue of the Hermitian matrix `m` is `>= -tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -tol)
}

fn off_diagonal_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc
}

fn jacobi_eigenvalues(mut a: ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return vec![0.0; n];
    }
    let stop = (REL_OFFDIAG_STOP * scale).powi(2);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sqr(&a) <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Applies `A <- G† A G`, where `G` zeroes the `(p, q)` entry.
///
/// `G = D·P` with `D = diag(.., 1_p, .., e^{-iφ}_q, ..)` making `A_pq` real
/// and `P` the real Jacobi rotation on the `(p, q)` plane.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.dim();
    let e_minus = phase.conj();

    // Columns: col_p <- c col_p - s e^{-iφ} col_q ; col_q <- s col_p + c e^{-iφ} col_q.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * e_minus * s;
        a[(k, q)] = akp * s + akq * e_minus * c;
    }
    // Rows: row_p <- c row_p - s e^{iφ} row_q ; row_q <- s row_p + c e^{iφ} row_q.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_matrix_is_sorted() {
        let m = ComplexMatrix::diag_real(&[3.0, 1.0, 2.0]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has spectrum {0, 2}.
        let m = ComplexMatrix::from_rows([
            [C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
            [C64::new(0.0, -1.0), C64::new(1.0, 0.0)],
        ]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(
            hermitian_eigenvalues(&ComplexMatrix::zeros(4)).unwrap(),
            vec![0.0; 4]
        );
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&ComplexMatrix::identity(6), 1e-10).unwrap());
        assert!(!is_psd(&ComplexMatrix::diag_real(&[1.0, -0.5]), 1e-10).unwrap());
    }
}
