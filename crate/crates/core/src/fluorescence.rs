//! Collective baths with `A = B = C`.
//!
//! Restricting to `|a₁⟩ = |b₁⟩` and writing `u = m − i·n` with real orthonormal
//! `m`, `n`, creation happens iff
//!
//! ```text
//! xy − z² + k(x + y) + k² < 0,   x = mᵀRm, y = nᵀRn, z = mᵀRn, k = mᵀJn
//! ```
//!
//! with `A = R + iJ`. `k ≠ 0`, i.e. `|⟨u|Im A|u⟩|² > 0`, is necessary but not
//! sufficient: for `A = 1 + iεJ` the left side is `(1 + k)² > 0`.

use crate::criteria::fluorescence_indicator;
use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};
use crate::generator::KossakowskiMatrix;
use crate::matrix::ComplexMatrix;
use crate::search::{search_symmetric_frame, SearchOutcome};
use crate::transposed::d_tilde_dissipative;
use crate::TOL_HERM;

/// `D = [[A, A], [A, A]]`.
pub fn collective_kossakowski(a: &ComplexMatrix, tol_psd: f64) -> Result<KossakowskiMatrix> {
    if a.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: a.dim(),
        });
    }
    KossakowskiMatrix::checked(a.clone(), a.clone(), a.clone(), tol_psd)
}

#[derive(Clone, Debug)]
pub struct FluorescenceReport {
    /// `Im A = 0` within tolerance.
    pub real_block: bool,
    /// Smallest eigenvalue of `D̃`; nonnegative means the transposed flow is
    /// completely positive.
    pub d_tilde_min_eigenvalue: f64,
    pub d_tilde_psd: bool,
    /// Result of the search over `|a₁⟩ = |b₁⟩`.
    pub search: SearchOutcome,
    /// `|⟨u|Im A|u⟩|²` at the frame found, if any.
    pub indicator: Option<f64>,
}

impl FluorescenceReport {
    pub fn creates(&self) -> bool {
        self.search.found.is_some()
    }
}

/// Analyzes a collective matrix `D = [[A, A], [A, A]]`, typically built with
/// [`collective_kossakowski`].
pub fn analyze_fluorescence(d: &KossakowskiMatrix, budget: usize, tol_psd: f64) -> Result<FluorescenceReport> {
    let a = d.a();
    let d_tilde_min_eigenvalue = min_eigenvalue(&d_tilde_dissipative(d))?;
    let search = search_symmetric_frame(d, budget)?;
    let indicator = search
        .found
        .as_ref()
        .map(|f| fluorescence_indicator(a, &f.frame));
    Ok(FluorescenceReport {
        real_block: a.im().max_abs() <= TOL_HERM,
        d_tilde_min_eigenvalue,
        d_tilde_psd: d_tilde_min_eigenvalue >= -tol_psd,
        search,
        indicator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;
    use crate::TOL_PSD;

    fn analyze(a: &ComplexMatrix) -> FluorescenceReport {
        analyze_fluorescence(&collective_kossakowski(a, TOL_PSD).unwrap(), 1000, TOL_PSD).unwrap()
    }

    fn rotating_block(a: f64) -> ComplexMatrix {
        crate::example_bath::ExampleBath::new(a, 0.0).a_block()
    }

    #[test]
    fn real_block_is_certified() {
        let a = ComplexMatrix::from_real([[1.0, 0.3, 0.0], [0.3, 0.5, 0.1], [0.0, 0.1, 0.2]]);
        let report = analyze(&a);
        assert!(report.real_block && report.d_tilde_psd && !report.creates());
    }

    #[test]
    fn imaginary_part_creates() {
        for x in [0.5, -0.5, 0.1, 0.9] {
            let report = analyze(&rotating_block(x));
            assert!(report.creates(), "a = {x}");
            assert!(report.indicator.unwrap() > 0.0);
        }
    }

    #[test]
    fn imaginary_part_is_not_sufficient() {
        // 1 + iεJ: the symmetric-frame form is (1 + k)² with |k| <= ε.
        let eps = 0.2;
        let a = ComplexMatrix::from_fn(3, |i, j| {
            let re = if i == j { 1.0 } else { 0.0 };
            let im = match (i, j) {
                (0, 1) => -eps,
                (1, 0) => eps,
                _ => 0.0,
            };
            C64::new(re, im)
        });
        let report = analyze(&a);
        assert!(!report.real_block);
        assert!(!report.creates());
    }

    #[test]
    fn rejects_non_positive_block() {
        let a = ComplexMatrix::diag_real(&[1.0, -0.5, 0.0]);
        assert!(matches!(
            collective_kossakowski(&a, TOL_PSD),
            Err(Error::NotPositive { .. })
        ));
    }
}
