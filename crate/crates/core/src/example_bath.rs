//! The two-parameter bath family
//! `A = C = [[1, −ia, 0], [ia, 1, 0], [0, 0, 0]]`, `B = diag(b, −b, 0)`.
//!
//! `D` is positive exactly on the unit disk `a² + b² ≤ 1`; `D̃` is positive on
//! the inscribed square `|a ± b| ≤ 1`.

use crate::error::Result;
use crate::generator::KossakowskiMatrix;
use crate::matrix::{ComplexMatrix, C64};
use crate::TOL_PSD;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExampleBath {
    pub a: f64,
    pub b: f64,
}

impl ExampleBath {
    pub fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    pub fn a_block(&self) -> ComplexMatrix {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        ComplexMatrix::from_rows([
            [one, C64::new(0.0, -self.a), z],
            [C64::new(0.0, self.a), one, z],
            [z, z, z],
        ])
    }

    pub fn b_block(&self) -> ComplexMatrix {
        ComplexMatrix::diag_real(&[self.b, -self.b, 0.0])
    }

    /// Blocks assembled without the positivity check.
    pub fn kossakowski_unchecked(&self) -> KossakowskiMatrix {
        KossakowskiMatrix::unchecked(self.a_block(), self.b_block(), self.a_block())
            .expect("example blocks are Hermitian")
    }

    /// Fails with [`crate::Error::NotPositive`] outside the unit disk.
    pub fn kossakowski(&self) -> Result<KossakowskiMatrix> {
        KossakowskiMatrix::checked(self.a_block(), self.b_block(), self.a_block(), TOL_PSD)
    }

    /// `Tr[D·R] = 2(1 − a − b)` in closed form.
    pub fn canonical_derivative_closed_form(&self) -> f64 {
        2.0 * (1.0 - self.a - self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_boundary_is_psd_with_zero_min_eigenvalue() {
        let d = ExampleBath::new(0.6, 0.8).kossakowski().unwrap();
        assert!(d.min_eigenvalue().abs() < 1e-12);
    }

    #[test]
    fn outside_disk_rejected() {
        assert!(ExampleBath::new(0.8, 0.8).kossakowski().is_err());
    }

    #[test]
    fn min_eigenvalue_matches_disk_formula() {
        for &(a, b) in &[(0.0, 0.0), (0.3, -0.4), (-0.9, 0.1), (0.5, 0.5)] {
            // D is block-diagonalized by (x, ±x): eigenvalues of A ± B are 0 and 1 ± sqrt(a² + b²).
            let d = ExampleBath::new(a, b).kossakowski_unchecked();
            let expected = (1.0 - f64::hypot(a, b)).min(0.0);
            assert!((d.min_eigenvalue() - expected).abs() < 1e-12);
        }
    }
}
