//! Local frames for product initial states.
//!
//! An initial state `|a₁⟩⟨a₁| ⊗ |b₁⟩⟨b₁|` is described by two single-qubit
//! unitaries with `|a_i⟩ = U|±⟩`, `|b_i⟩ = V|±⟩`. Each unitary induces a
//! rotation of the Pauli vector, `U†σ_iU = Σ_j 𝒰_ij σ_j`.

use crate::error::{Error, Result};
use crate::generator::Real3;
use crate::matrix::{kron, ComplexMatrix, C64, ZERO};
use crate::qubit::{pauli_basis, DensityMatrix};

/// `exp(−iφσ₃/2)·exp(−iθσ₂/2)·exp(−iχσ₃/2)`.
pub fn su2_zyz(phi: f64, theta: f64, chi: f64) -> ComplexMatrix {
    let rz = |x: f64| {
        ComplexMatrix::from_rows([
            [C64::from_polar(1.0, -x / 2.0), ZERO],
            [ZERO, C64::from_polar(1.0, x / 2.0)],
        ])
    };
    let (s, c) = (theta / 2.0).sin_cos();
    let ry = ComplexMatrix::from_real([[c, -s], [s, c]]);
    rz(phi).matmul(&ry).matmul(&rz(chi))
}

/// The rotation `𝒰_ij = ½ Tr(U†σ_iU σ_j)` induced by a 2×2 unitary.
pub fn adjoint_rotation(u: &ComplexMatrix) -> Real3 {
    let s = pauli_basis();
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        let conj = u.adjoint().matmul(&s[i]).matmul(u);
        for j in 0..3 {
            out[i][j] = 0.5 * conj.matmul(&s[j]).trace().re;
        }
    }
    out
}

fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    u.adjoint().matmul(u).max_abs_diff(&ComplexMatrix::identity(u.dim()))
}

/// The pair of local bases `{|a_i⟩}`, `{|b_j⟩}` fixing a product initial state.
#[derive(Clone, Debug)]
pub struct InitialStateFrame {
    u: ComplexMatrix,
    v: ComplexMatrix,
    cal_u: Real3,
    cal_v: Real3,
    euler: Option<([f64; 3], [f64; 3])>,
}

impl InitialStateFrame {
    pub fn from_unitaries(u: ComplexMatrix, v: ComplexMatrix) -> Result<Self> {
        for m in [&u, &v] {
            if m.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: m.dim(),
                });
            }
            let defect = unitarity_defect(m);
            if !(defect <= 1e-10) {
                return Err(Error::NotUnitary(defect));
            }
        }
        let cal_u = adjoint_rotation(&u);
        let cal_v = adjoint_rotation(&v);
        Ok(Self {
            u,
            v,
            cal_u,
            cal_v,
            euler: None,
        })
    }

    /// Frame from Z-Y-Z Euler angles `(φ, θ, χ)` for each qubit.
    pub fn from_euler(angles_u: [f64; 3], angles_v: [f64; 3]) -> Self {
        let u = su2_zyz(angles_u[0], angles_u[1], angles_u[2]);
        let v = su2_zyz(angles_v[0], angles_v[1], angles_v[2]);
        let mut frame = Self::from_unitaries(u, v).expect("Euler rotations are unitary");
        frame.euler = Some((angles_u, angles_v));
        frame
    }

    /// `|a₁⟩ = |b₁⟩ = |+⟩`, the σ₃ eigenbasis.
    pub fn identity() -> Self {
        Self::from_euler([0.0; 3], [0.0; 3])
    }

    pub fn u(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn cal_u(&self) -> &Real3 {
        &self.cal_u
    }

    pub fn cal_v(&self) -> &Real3 {
        &self.cal_v
    }

    /// Euler angles, when the frame was built from them.
    pub fn euler_angles(&self) -> Option<([f64; 3], [f64; 3])> {
        self.euler
    }

    /// `𝒲 = diag(𝒰, 𝒱)` as a 6×6 matrix.
    pub fn cal_w(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(6, |i, j| match (i < 3, j < 3) {
            (true, true) => C64::new(self.cal_u[i][j], 0.0),
            (false, false) => C64::new(self.cal_v[i - 3][j - 3], 0.0),
            _ => ZERO,
        })
    }

    /// `|a₁⟩ = U|+⟩`.
    pub fn a1(&self) -> [C64; 2] {
        [self.u[(0, 0)], self.u[(1, 0)]]
    }

    /// `|b₁⟩ = V|+⟩`.
    pub fn b1(&self) -> [C64; 2] {
        [self.v[(0, 0)], self.v[(1, 0)]]
    }

    /// `|a₁⟩⟨a₁| ⊗ |b₁⟩⟨b₁|`.
    pub fn initial_state(&self) -> DensityMatrix {
        let a = self.a1();
        let b = self.b1();
        let psi = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
        DensityMatrix::pure(&psi).expect("product of unit vectors")
    }

    /// `U ⊗ V̄`: maps probe components `ψ_ij` to the computational-basis vector
    /// that reproduces `⟨ψ|ρ̃|ψ⟩` with the transpose taken in the `{|b_j⟩}` basis.
    pub(crate) fn probe_embedding(&self) -> ComplexMatrix {
        kron(&self.u, &self.v.conj())
    }
}

impl Default for InitialStateFrame {
    fn default() -> Self {
        Self::identity()
    }
}

/// `det` of a real 3×3 matrix.
pub fn det3(m: &Real3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
