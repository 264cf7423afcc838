//! Sweep of the two-parameter example bath over `[−1, 1]²`.

use bathent::eigen::min_eigenvalue;
use bathent::transposed::d_tilde_dissipative;
use bathent::{search_entangling_frame, witness_derivative_general, ExampleBath, InitialStateFrame, ProbeVector};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub a: f64,
    pub b: f64,
    pub cp_valid: bool,
    pub dtilde_psd: bool,
    /// `Tr[D·R]`, the slope for `|++⟩` with the symmetric Bell probe.
    pub canonical_derivative: f64,
    pub creates_canonical: bool,
    pub creates_any_frame: bool,
    pub search_budget_used: usize,
}

pub const SCAN_HEADER: [&str; 8] = [
    "a",
    "b",
    "cp_valid",
    "dtilde_psd",
    "canonical_derivative",
    "creates_canonical",
    "creates_any_frame",
    "search_budget_used",
];

/// Grid coordinate `k` of `n` on `[−1, 1]`, exact at both ends and at 0 for odd `n`.
pub fn grid_coordinate(k: usize, n: usize) -> f64 {
    let half = (n - 1) as f64 / 2.0;
    (k as f64 - half) / half
}

pub fn scan_point(a: f64, b: f64, budget: usize, tol: f64) -> Result<ScanRecord, CliError> {
    let bath = ExampleBath::new(a, b);
    let d = bath.kossakowski_unchecked();
    let cp_valid = min_eigenvalue(d.matrix())? >= -tol;
    let d_tilde = d_tilde_dissipative(&d);
    let dtilde_psd = min_eigenvalue(&d_tilde)? >= -tol;
    let canonical_derivative = witness_derivative_general(&d_tilde, &InitialStateFrame::identity(), &ProbeVector::canonical())?;
    let mut record = ScanRecord {
        a,
        b,
        cp_valid,
        dtilde_psd,
        canonical_derivative,
        creates_canonical: false,
        creates_any_frame: false,
        search_budget_used: 0,
    };
    if cp_valid {
        record.creates_canonical = canonical_derivative < -bathent::CREATION_MARGIN;
        if !dtilde_psd {
            let outcome = search_entangling_frame(&d, budget)?;
            record.creates_any_frame = outcome.found.is_some();
            record.search_budget_used = outcome.evaluations;
        }
    }
    Ok(record)
}

/// Row-major over `b` (outer, descending from 1) and `a` (inner, ascending).
pub fn scan(resolution: usize, budget: usize, tol: f64) -> Result<Vec<ScanRecord>, CliError> {
    if resolution < 3 {
        return Err(CliError::Invalid(format!("resolution must be at least 3, got {resolution}")));
    }
    if budget == 0 {
        return Err(CliError::Invalid("budget must be at least 1".into()));
    }
    let mut records = Vec::with_capacity(resolution * resolution);
    for row in 0..resolution {
        let b = -grid_coordinate(row, resolution);
        for col in 0..resolution {
            records.push(scan_point(grid_coordinate(col, resolution), b, budget, tol)?);
        }
    }
    Ok(records)
}
