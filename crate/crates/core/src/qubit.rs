//! Qubit primitives: Pauli matrices, two-qubit states and partial transposition.
//!
//! Two-qubit operators act on `C² ⊗ C²` with basis order
//! `|a₁b₁⟩, |a₁b₂⟩, |a₂b₁⟩, |a₂b₂⟩`, i.e. index `2·i + j` for `|a_i⟩⊗|b_j⟩`
//! (zero-based). `|+⟩` is the `+1` eigenvector of σ₃ and sits at index 0.

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, C64, I, ONE, ZERO};
use crate::{TOL_HERM, TOL_PSD, TOL_TRACE};

/// The Pauli matrix σ_i for `i ∈ {1, 2, 3}`.
pub fn pauli(i: usize) -> Result<ComplexMatrix> {
    match i {
        1 => Ok(ComplexMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]])),
        2 => Ok(ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]])),
        3 => Ok(ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]])),
        other => Err(Error::PauliIndex(other)),
    }
}

/// σ₁, σ₂, σ₃ in order.
pub fn pauli_basis() -> [ComplexMatrix; 3] {
    [1, 2, 3].map(|i| pauli(i).expect("index in range"))
}

/// Transposes the second tensor factor of a 4×4 operator.
pub fn partial_transpose_second(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: m.dim(),
        });
    }
    Ok(ComplexMatrix::from_fn(4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        m[(2 * i + l, 2 * k + j)]
    }))
}

/// Single-qubit state `(1 + r·σ)/2` for a Bloch vector with `|r| <= 1`.
pub fn bloch_state(r: [f64; 3]) -> Result<ComplexMatrix> {
    if r.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("Bloch vector"));
    }
    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 1.0 + TOL_PSD {
        return Err(Error::NotPositive {
            min_eigenvalue: 0.5 * (1.0 - norm),
        });
    }
    let [s1, s2, s3] = pauli_basis();
    let mut m = ComplexMatrix::identity(2);
    for (s, &x) in [s1, s2, s3].iter().zip(&r) {
        m = &m + &s.scale_real(x);
    }
    Ok(m.scale_real(0.5))
}

/// A validated two-qubit density matrix.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity with the default tolerances.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, TOL_HERM, TOL_TRACE, TOL_PSD)
    }

    pub fn with_tolerance(
        matrix: ComplexMatrix,
        tol_herm: f64,
        tol_trace: f64,
        tol_psd: f64,
    ) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: matrix.dim(),
            });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite("density matrix"));
        }
        let defect = matrix.hermitian_defect();
        if defect > tol_herm {
            return Err(Error::NotHermitian { defect });
        }
        let trace = matrix.trace();
        if (trace - ONE).norm() > tol_trace {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let min_eigenvalue = hermitian_eigenvalues(&matrix)?[0];
        if min_eigenvalue < -tol_psd {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// Wraps an evolved matrix without validation; positivity may be violated
    /// by non-CP flows and is left for the caller to inspect.
    pub(crate) fn unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 4);
        Self { matrix }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            matrix: ComplexMatrix::identity(4).scale_real(0.25),
        }
    }

    /// `ρ₁ ⊗ ρ₂` from two single-qubit density matrices.
    pub fn product(rho1: &ComplexMatrix, rho2: &ComplexMatrix) -> Result<Self> {
        for m in [rho1, rho2] {
            if m.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: m.dim(),
                });
            }
        }
        Self::new(kron(rho1, rho2))
    }

    /// Product state from two Bloch vectors.
    pub fn from_bloch(r1: [f64; 3], r2: [f64; 3]) -> Result<Self> {
        Self::product(&bloch_state(r1)?, &bloch_state(r2)?)
    }

    /// `|φ⟩⟨φ|` for a (not necessarily normalized) state vector.
    pub fn pure(phi: &[C64; 4]) -> Result<Self> {
        let norm = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        let unit: Vec<C64> = phi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&unit, &unit))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }

    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose_second(&self.matrix).expect("density matrices are 4x4")
    }
}
