//! Generator of the partially transposed state.
//!
//! If `ρ(t)` solves the master equation, its partial transpose on the second
//! qubit `ρ̃(t)` solves an equation of the same shape with Hamiltonian `H̃` and
//! coefficient matrix `𝒮·D̃·𝒮`, where
//!
//! ```text
//! H̃  = Σ h1_i σ_i⊗1 + Σ h2_i S_ij 1⊗σ_j + Σ Im(B·S)_ij σ_i⊗σ_j
//! D̃  = [[A, Re(B) + i·H12], [Re(Bᵀ) − i·H12ᵀ, Cᵀ]]
//! 𝒮  = diag(1₃, S),  S = diag(−1, 1, −1)
//! ```
//!
//! `D̃` is Hermitian but in general not positive; when it is positive the
//! transposed flow is completely positive and no entanglement can form.

use crate::error::Result;
use crate::generator::{superoperator_with, HamiltonianSpec, KossakowskiMatrix, LindbladGenerator, Propagator, Real3};
use crate::matrix::{kron, ComplexMatrix, C64};
use crate::qubit::pauli_basis;

/// `S = diag(−1, 1, −1)`: `−σ_jᵀ = S_jj σ_j`.
pub const S_DIAG: [f64; 3] = [-1.0, 1.0, -1.0];

fn real3_to_matrix(m: &Real3) -> ComplexMatrix {
    ComplexMatrix::from_fn(3, |i, j| C64::new(m[i][j], 0.0))
}

/// `𝒮 = diag(1, 1, 1, −1, 1, −1)`.
pub fn s_matrix() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, 1.0, 1.0, S_DIAG[0], S_DIAG[1], S_DIAG[2]])
}

/// `D̃` including the `±i·H12` off-diagonal blocks.
pub fn d_tilde(d: &KossakowskiMatrix, h12: &Real3) -> ComplexMatrix {
    let ih12 = real3_to_matrix(h12).scale(C64::new(0.0, 1.0));
    let upper = &d.b().re() + &ih12;
    let lower = upper.adjoint();
    ComplexMatrix::from_blocks(d.a(), &upper, &lower, &d.c().transpose())
}

/// `D̃` with the two-body Hamiltonian ignored, as used by the creation criteria.
pub fn d_tilde_dissipative(d: &KossakowskiMatrix) -> ComplexMatrix {
    d_tilde(d, &[[0.0; 3]; 3])
}

/// `H̃` as a 4×4 matrix.
pub fn h_tilde(spec: &HamiltonianSpec, b: &ComplexMatrix) -> ComplexMatrix {
    let s = pauli_basis();
    let id = ComplexMatrix::identity(2);
    let mut h = ComplexMatrix::zeros(4);
    for i in 0..3 {
        h = &h + &kron(&s[i], &id).scale_real(spec.h1[i]);
        // S is diagonal, so Σ_j h2_i S_ij σ_j = h2_i S_ii σ_i.
        h = &h + &kron(&id, &s[i]).scale_real(spec.h2[i] * S_DIAG[i]);
        for j in 0..3 {
            let coeff = b[(i, j)].im * S_DIAG[j];
            if coeff != 0.0 {
                h = &h + &kron(&s[i], &s[j]).scale_real(coeff);
            }
        }
    }
    h
}

/// The pair `(H̃, 𝒮·D̃·𝒮)` driving `ρ̃(t)`.
#[derive(Clone, Debug)]
pub struct PTGenerator {
    h_tilde: ComplexMatrix,
    d_tilde: ComplexMatrix,
    s_conjugated: ComplexMatrix,
}

impl PTGenerator {
    pub fn h_tilde(&self) -> &ComplexMatrix {
        &self.h_tilde
    }

    pub fn d_tilde(&self) -> &ComplexMatrix {
        &self.d_tilde
    }

    /// `𝒮·D̃·𝒮`, the coefficient matrix actually used in the transposed flow.
    pub fn s_conjugated(&self) -> &ComplexMatrix {
        &self.s_conjugated
    }

    pub fn superoperator(&self) -> ComplexMatrix {
        superoperator_with(&self.h_tilde, &self.s_conjugated)
    }

    pub fn propagator(&self, t: f64) -> Result<Propagator> {
        Propagator::new(&self.superoperator(), t)
    }

    /// `ρ̃(t)`; Hermitian and trace-preserving, but possibly not positive.
    pub fn evolve(&self, rho_tilde0: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
        Ok(self.propagator(t)?.apply(rho_tilde0).hermitian_part())
    }
}

pub fn build_pt_generator(gen: &LindbladGenerator) -> PTGenerator {
    let spec = gen.hamiltonian_spec();
    let d = gen.kossakowski();
    let d_tilde = d_tilde(d, &spec.h12);
    let s = s_matrix();
    let s_conjugated = s.matmul(&d_tilde).matmul(&s);
    PTGenerator {
        h_tilde: h_tilde(spec, d.b()),
        d_tilde,
        s_conjugated,
    }
}

/// `ρ̃(t)` under the transposed generator.
pub fn evolve_pt(pt: &PTGenerator, rho_tilde0: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    pt.evolve(rho_tilde0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::hermitian_eigenvalues;
    use crate::example_bath::ExampleBath;
    use crate::qubit::{partial_transpose_second, DensityMatrix};

    #[test]
    fn real_b_without_two_body_terms_has_local_h_tilde() {
        let bath = ExampleBath::new(0.3, 0.5).kossakowski().unwrap();
        let spec = HamiltonianSpec {
            h1: [0.2, 0.0, 0.4],
            ..Default::default()
        };
        let gen = LindbladGenerator::new(spec.clone(), bath).unwrap();
        let pt = build_pt_generator(&gen);
        let local_only = HamiltonianSpec {
            h1: spec.h1,
            ..Default::default()
        };
        assert!(pt.h_tilde().approx_eq(&crate::generator::build_hamiltonian(&local_only), 1e-15));
    }

    #[test]
    fn example_bath_d_tilde_blocks() {
        let d = ExampleBath::new(0.8, 0.6).kossakowski().unwrap();
        let gen = LindbladGenerator::dissipative(d.clone());
        let pt = build_pt_generator(&gen);
        let expected = ComplexMatrix::from_blocks(d.a(), d.b(), &d.b().transpose(), &d.c().conj());
        assert!(pt.d_tilde().approx_eq(&expected, 0.0));
    }

    #[test]
    fn example_bath_inside_square_has_psd_d_tilde() {
        let d = ExampleBath::new(0.5, 0.4).kossakowski().unwrap();
        let ev = hermitian_eigenvalues(&d_tilde_dissipative(&d)).unwrap();
        assert!(ev[0] >= -1e-12, "{ev:?}");
    }

    #[test]
    fn zero_generator_is_identity_flow() {
        let pt = build_pt_generator(&LindbladGenerator::dissipative(KossakowskiMatrix::zero()));
        let rho = DensityMatrix::from_bloch([0.4, 0.1, 0.2], [0.0, 0.0, 0.9]).unwrap();
        let rt = partial_transpose_second(rho.matrix()).unwrap();
        assert!(evolve_pt(&pt, &rt, 3.0).unwrap().approx_eq(&rt, 1e-15));
    }

    #[test]
    fn s_conjugation_preserves_spectrum() {
        let d = ExampleBath::new(0.7, -0.6).kossakowski().unwrap();
        let pt = build_pt_generator(&LindbladGenerator::dissipative(d));
        let a = hermitian_eigenvalues(pt.d_tilde()).unwrap();
        let b = hermitian_eigenvalues(pt.s_conjugated()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
