//! The probe functional `E(t) = ⟨ψ|ρ̃(t)|ψ⟩` and its initial slope.
//!
//! A product initial state `|a₁b₁⟩` has `E(0) = 0` for any probe with
//! `ψ₁₁ = 0`. A negative `∂_t E(0)` then means the partial transpose acquires a
//! negative eigenvalue immediately, i.e. the bath entangles the two qubits.
//!
//! The slope is computed three ways: directly from the generator
//! ([`witness_derivative_numeric`]), as `Tr[D·R]` for the canonical
//! configuration ([`witness_derivative_trace`]), and as the 6×6 quadratic form
//! in `D̃` for an arbitrary frame ([`witness_derivative_general`]).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::frame::InitialStateFrame;
use crate::generator::{KossakowskiMatrix, LindbladGenerator};
use crate::matrix::{ComplexMatrix, C64, I, ZERO};
use crate::qubit::{partial_transpose_second, pauli_basis, DensityMatrix};

/// Tolerance on `E(0) = 0` and on `ψ₁₁ = 0`.
pub const E0_TOL: f64 = 1e-12;

/// Components `ψ_ij` of `|ψ⟩ = Σ ψ_ij |a_i⟩⊗|b_j⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeVector {
    pub psi11: C64,
    pub psi12: C64,
    pub psi21: C64,
    pub psi22: C64,
}

impl ProbeVector {
    /// Requires `Σ|ψ_ij|² = 1` within `1e-12`.
    pub fn new(psi11: C64, psi12: C64, psi21: C64, psi22: C64) -> Result<Self> {
        let p = Self {
            psi11,
            psi12,
            psi21,
            psi22,
        };
        let n = p.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(n));
        }
        Ok(p)
    }

    /// Rescales the components to unit norm.
    pub fn normalized(psi11: C64, psi12: C64, psi21: C64, psi22: C64) -> Result<Self> {
        let n = (psi11.norm_sqr() + psi12.norm_sqr() + psi21.norm_sqr() + psi22.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        Ok(Self {
            psi11: psi11 / n,
            psi12: psi12 / n,
            psi21: psi21 / n,
            psi22: psi22 / n,
        })
    }

    /// Probe with only the `ψ₁₂`, `ψ₂₁` components, normalized.
    pub fn off_diagonal(psi12: C64, psi21: C64) -> Result<Self> {
        Self::normalized(ZERO, psi12, psi21, ZERO)
    }

    /// `(|+−⟩ + |−+⟩)/√2`.
    pub fn canonical() -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            psi11: ZERO,
            psi12: h,
            psi21: h,
            psi22: ZERO,
        }
    }

    pub fn from_array(v: [C64; 4]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn as_array(&self) -> [C64; 4] {
        [self.psi11, self.psi12, self.psi21, self.psi22]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.as_array().iter().map(|z| z.norm_sqr()).sum()
    }

    /// An entangled probe needs both `ψ₁₂` and `ψ₂₁` nonzero (given `ψ₁₁ = 0`).
    pub fn is_entangled(&self) -> bool {
        let [a, b, c, d] = self.as_array();
        (a * d - b * c).norm() > 1e-12
    }
}

/// `w_i = ⟨+|σ_i|−⟩`, `w_{i+3} = w_i*`, i.e. `(1, −i, 0, 1, i, 0)`.
pub fn w_vector() -> [C64; 6] {
    let s = pauli_basis();
    let mut w = [ZERO; 6];
    for i in 0..3 {
        w[i] = s[i][(0, 1)];
        w[i + 3] = s[i][(0, 1)].conj();
    }
    w
}

fn rotate3(rot: &[[f64; 3]; 3], x: &[C64]) -> [C64; 3] {
    let mut out = [ZERO; 3];
    for i in 0..3 {
        out[i] = (0..3).map(|j| x[j] * rot[i][j]).sum();
    }
    out
}

/// A product initial state together with the vectors `u`, `v` that enter
/// the probe-independent creation condition.
#[derive(Clone, Debug)]
pub struct CreationTest {
    frame: InitialStateFrame,
    w: [C64; 6],
    u: [C64; 3],
    v: [C64; 3],
    probe: Option<ProbeVector>,
}

impl CreationTest {
    pub fn new(frame: InitialStateFrame) -> Self {
        let w = w_vector();
        // u_i = Σ_j 𝒰_ij w_j ; v_i = Σ_j 𝒱_ij w_j*
        let u = rotate3(frame.cal_u(), &w[..3]);
        let v = rotate3(frame.cal_v(), &w[3..]);
        Self {
            frame,
            w,
            u,
            v,
            probe: None,
        }
    }

    pub fn with_probe(mut self, probe: ProbeVector) -> Self {
        self.probe = Some(probe);
        self
    }

    pub fn frame(&self) -> &InitialStateFrame {
        &self.frame
    }

    pub fn w(&self) -> &[C64; 6] {
        &self.w
    }

    pub fn u(&self) -> &[C64; 3] {
        &self.u
    }

    pub fn v(&self) -> &[C64; 3] {
        &self.v
    }

    pub fn probe(&self) -> Option<&ProbeVector> {
        self.probe.as_ref()
    }

    pub fn initial_state(&self) -> DensityMatrix {
        self.frame.initial_state()
    }

    /// The probe written in the computational basis, to be paired with the
    /// partial transpose on the computational basis of the second qubit.
    pub fn probe_in_computational_basis(&self, psi: &ProbeVector) -> ProbeVector {
        let v = self.frame.probe_embedding().mul_vec(&psi.as_array());
        ProbeVector {
            psi11: v[0],
            psi12: v[1],
            psi21: v[2],
            psi22: v[3],
        }
    }
}

/// `⟨ψ|ρ̃|ψ⟩` with `ψ` in the computational basis.
pub fn probe_expectation(rho_tilde: &ComplexMatrix, psi: &ProbeVector) -> Result<f64> {
    if rho_tilde.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho_tilde.dim(),
        });
    }
    let p = psi.as_array();
    Ok(rho_tilde.sandwich(&p, &p).re)
}

/// `∂_t E(0) = ⟨ψ| PT(−i[H, ρ₀] + L[ρ₀]) |ψ⟩`, evaluated exactly from the generator.
///
/// The probe is given in the computational basis; `E(0)` must vanish.
pub fn witness_derivative_numeric(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    psi: &ProbeVector,
) -> Result<f64> {
    let e0 = probe_expectation(&rho0.partial_transpose(), psi)?;
    if e0.abs() > E0_TOL {
        return Err(Error::Precondition(format!(
            "E(0) = {e0:e} is not zero for this state and probe"
        )));
    }
    let slope = partial_transpose_second(&gen.apply(rho0.matrix()))?;
    probe_expectation(&slope, psi)
}

/// `R = [[P, Q], [Q, P]]` with `P = ½[[1, i, 0], [−i, 1, 0], [0, 0, 0]]`
/// and `Q = diag(−½, ½, 0)`.
pub fn build_r() -> ComplexMatrix {
    let half = C64::new(0.5, 0.0);
    let p = ComplexMatrix::from_rows([
        [half, I * 0.5, ZERO],
        [-I * 0.5, half, ZERO],
        [ZERO, ZERO, ZERO],
    ]);
    let q = ComplexMatrix::diag_real(&[-0.5, 0.5, 0.0]);
    ComplexMatrix::from_blocks(&p, &q, &q, &p)
}

/// `Tr[D·R]`: the slope for `ρ₀ = |++⟩⟨++|` and probe `(|+−⟩ + |−+⟩)/√2`.
pub fn witness_derivative_trace(d: &KossakowskiMatrix) -> f64 {
    d.matrix().matmul(&build_r()).trace().re
}

/// `w†·Ψ†·𝒲ᵀ·D̃·𝒲·Ψ·w`, the slope for the product state fixed by `frame`
/// and the probe with components `psi` in that frame.
///
/// `ψ₂₂` does not enter; `ψ₁₁` must vanish.
pub fn witness_derivative_general(
    d_tilde: &ComplexMatrix,
    frame: &InitialStateFrame,
    psi: &ProbeVector,
) -> Result<f64> {
    if d_tilde.dim() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: d_tilde.dim(),
        });
    }
    if psi.psi11.norm() > E0_TOL {
        return Err(Error::Precondition(format!(
            "probe component ψ11 = {} must vanish",
            psi.psi11
        )));
    }
    let w = w_vector();
    let cal_w = frame.cal_w();
    let big_psi = ComplexMatrix::from_fn(6, |i, j| {
        if i != j {
            ZERO
        } else if i < 3 {
            psi.psi21
        } else {
            -psi.psi12
        }
    });
    let inner = big_psi
        .adjoint()
        .matmul(&cal_w.transpose())
        .matmul(d_tilde)
        .matmul(&cal_w)
        .matmul(&big_psi);
    Ok(inner.sandwich(&w, &w).re)
}
