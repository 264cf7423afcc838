//! Matrix exponential by scaling and squaring with a degree-13 Padé approximant.
//!
//! Coefficients and the θ₁₃ threshold follow Higham (2005), "The scaling and
//! squaring method for the matrix exponential revisited".

use crate::error::Result;
use crate::matrix::{ComplexMatrix, C64};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371920351148152;

/// `exp(A)` for a square complex matrix.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    let norm = a.one_norm();
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = a.scale_real(2f64.powi(-squarings));

    let id = ComplexMatrix::identity(n);
    let a2 = scaled.matmul(&scaled);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let b = &PADE13;

    let lin = |c6: f64, c4: f64, c2: f64, c0: f64| -> ComplexMatrix {
        let mut out = a6.scale_real(c6);
        out = &out + &a4.scale_real(c4);
        out = &out + &a2.scale_real(c2);
        &out + &id.scale_real(c0)
    };

    let u_inner = &a6.matmul(&lin(b[13], b[11], b[9], 0.0)) + &lin(b[7], b[5], b[3], b[1]);
    let u = scaled.matmul(&u_inner);
    let v = &a6.matmul(&lin(b[12], b[10], b[8], 0.0)) + &lin(b[6], b[4], b[2], b[0]);

    let numerator = &v + &u;
    let denominator = &v - &u;
    let mut result = denominator.solve(&numerator)?;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

/// `exp(t·A)`.
pub fn expm_scaled(a: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    expm(&a.scale(C64::new(t, 0.0)))
}
