//! Kossakowski–Lindblad generators for two qubits in a common bath.
//!
//! The generator is `ρ ↦ -i[H, ρ] + L[ρ]` with
//! `L[ρ] = Σ_{αβ} D_{αβ} (F_α ρ F_β − ½{F_β F_α, ρ})`, where
//! `F_α = σ_α ⊗ 1` for α = 1..3 and `F_α = 1 ⊗ σ_{α−3}` for α = 4..6.
//!
//! Superoperators use column-stacking vectorization,
//! `vec(XρY) = (Yᵀ ⊗ X) vec(ρ)`.

use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};
use crate::expm::expm_scaled;
use crate::matrix::{kron, ComplexMatrix, C64, I, ZERO};
use crate::qubit::{pauli_basis, DensityMatrix};
use crate::{TOL_HERM, TOL_PSD};

/// Real 3×3 coefficient array, row-major.
pub type Real3 = [[f64; 3]; 3];

/// Coefficients of `H = Σ h1_i σ_i⊗1 + Σ h2_i 1⊗σ_i + Σ h12_ij σ_i⊗σ_j`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HamiltonianSpec {
    pub h1: [f64; 3],
    pub h2: [f64; 3],
    pub h12: Real3,
}

impl HamiltonianSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_finite(&self) -> bool {
        self.h1.iter().chain(&self.h2).all(|x| x.is_finite())
            && self.h12.iter().flatten().all(|x| x.is_finite())
    }

    pub fn h12_is_zero(&self) -> bool {
        self.h12.iter().flatten().all(|&x| x == 0.0)
    }
}

/// Builds the 4×4 Hamiltonian from its Pauli coefficients.
pub fn build_hamiltonian(spec: &HamiltonianSpec) -> ComplexMatrix {
    let s = pauli_basis();
    let id = ComplexMatrix::identity(2);
    let mut h = ComplexMatrix::zeros(4);
    for i in 0..3 {
        h = &h + &kron(&s[i], &id).scale_real(spec.h1[i]);
        h = &h + &kron(&id, &s[i]).scale_real(spec.h2[i]);
        for j in 0..3 {
            if spec.h12[i][j] != 0.0 {
                h = &h + &kron(&s[i], &s[j]).scale_real(spec.h12[i][j]);
            }
        }
    }
    h
}

/// The six operators `F_α`.
pub fn lindblad_operators() -> [ComplexMatrix; 6] {
    let s = pauli_basis();
    let id = ComplexMatrix::identity(2);
    [
        kron(&s[0], &id),
        kron(&s[1], &id),
        kron(&s[2], &id),
        kron(&id, &s[0]),
        kron(&id, &s[1]),
        kron(&id, &s[2]),
    ]
}

/// The Kossakowski coefficient matrix `D = [[A, B], [B†, C]]`.
#[derive(Clone, Debug)]
pub struct KossakowskiMatrix {
    a: ComplexMatrix,
    b: ComplexMatrix,
    c: ComplexMatrix,
    assembled: ComplexMatrix,
}

impl KossakowskiMatrix {
    /// Builds `D` from its blocks and checks that it is positive semidefinite
    /// (the complete-positivity condition).
    pub fn new(a: ComplexMatrix, b: ComplexMatrix, c: ComplexMatrix) -> Result<Self> {
        Self::checked(a, b, c, TOL_PSD)
    }

    pub fn checked(a: ComplexMatrix, b: ComplexMatrix, c: ComplexMatrix, tol: f64) -> Result<Self> {
        let k = Self::unchecked(a, b, c)?;
        let min_eigenvalue = min_eigenvalue(&k.assembled)?;
        if min_eigenvalue < -tol {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(k)
    }

    /// Builds `D` with Hermitian `A` and `C` but without the positivity check.
    pub fn unchecked(a: ComplexMatrix, b: ComplexMatrix, c: ComplexMatrix) -> Result<Self> {
        for m in [&a, &b, &c] {
            if m.dim() != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    found: m.dim(),
                });
            }
            if !m.is_finite() {
                return Err(Error::NonFinite("Kossakowski block"));
            }
        }
        for m in [&a, &c] {
            let defect = m.hermitian_defect();
            if defect > TOL_HERM {
                return Err(Error::NotHermitian { defect });
            }
        }
        let assembled = ComplexMatrix::from_blocks(&a, &b, &b.adjoint(), &c);
        Ok(Self { a, b, c, assembled })
    }

    /// Splits a Hermitian 6×6 matrix into blocks, without the positivity check.
    pub fn from_assembled(d: &ComplexMatrix) -> Result<Self> {
        if d.dim() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                found: d.dim(),
            });
        }
        let defect = d.hermitian_defect();
        if defect > TOL_HERM {
            return Err(Error::NotHermitian { defect });
        }
        Self::unchecked(d.block(0, 0, 3), d.block(0, 3, 3), d.block(3, 3, 3))
    }

    pub fn zero() -> Self {
        Self::unchecked(
            ComplexMatrix::zeros(3),
            ComplexMatrix::zeros(3),
            ComplexMatrix::zeros(3),
        )
        .expect("zero blocks are valid")
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    /// The assembled 6×6 matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.assembled
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.assembled).expect("assembled D is Hermitian")
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }
}

/// `L[ρ]` for an arbitrary 6×6 coefficient matrix.
pub fn dissipator_with(coeffs: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(coeffs.dim(), 6);
    assert_eq!(rho.dim(), 4);
    let f = lindblad_operators();
    let f_rho: Vec<ComplexMatrix> = f.iter().map(|fa| fa.matmul(rho)).collect();
    let mut out = ComplexMatrix::zeros(4);
    for alpha in 0..6 {
        for beta in 0..6 {
            let d = coeffs[(alpha, beta)];
            if d == ZERO {
                continue;
            }
            let jump = f_rho[alpha].matmul(&f[beta]);
            let fbfa = f[beta].matmul(&f[alpha]);
            let anti = fbfa.anticommutator(rho).scale_real(0.5);
            out = &out + &(&jump - &anti).scale(d);
        }
    }
    out
}

/// `L[ρ]` in the `F_α` form.
pub fn dissipator(d: &KossakowskiMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    dissipator_with(d.matrix(), rho)
}

/// `L[ρ]` written block by block: single-qubit terms from `A` and `C`,
/// bath-induced correlation terms from `B`.
///
/// Evaluated independently of [`dissipator`] so the two can cross-check.
pub fn dissipator_blockform(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    rho: &ComplexMatrix,
) -> ComplexMatrix {
    let s = pauli_basis();
    let id = ComplexMatrix::identity(2);
    let first: Vec<ComplexMatrix> = s.iter().map(|si| kron(si, &id)).collect();
    let second: Vec<ComplexMatrix> = s.iter().map(|si| kron(&id, si)).collect();
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            if a[(i, j)] != ZERO {
                let sjsi = kron(&s[j].matmul(&s[i]), &id);
                let term = &first[i].matmul(rho).matmul(&first[j])
                    - &sjsi.anticommutator(rho).scale_real(0.5);
                out = &out + &term.scale(a[(i, j)]);
            }
            if c[(i, j)] != ZERO {
                let sjsi = kron(&id, &s[j].matmul(&s[i]));
                let term = &second[i].matmul(rho).matmul(&second[j])
                    - &sjsi.anticommutator(rho).scale_real(0.5);
                out = &out + &term.scale(c[(i, j)]);
            }
            let bij = b[(i, j)];
            if bij != ZERO {
                let corr = kron(&s[i], &s[j]).anticommutator(rho).scale_real(0.5);
                let t1 = &first[i].matmul(rho).matmul(&second[j]) - &corr;
                let t2 = &second[j].matmul(rho).matmul(&first[i]) - &corr;
                out = &out + &t1.scale(bij);
                out = &out + &t2.scale(bij.conj());
            }
        }
    }
    out
}

/// `-i[H, ρ]`.
pub fn hamiltonian_part(h: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    h.commutator(rho).scale(-I)
}

/// Column-stacking vectorization.
pub fn vectorize(m: &ComplexMatrix) -> Vec<C64> {
    let n = m.dim();
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            out.push(m[(i, j)]);
        }
    }
    out
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &[C64]) -> ComplexMatrix {
    let n = (v.len() as f64).sqrt().round() as usize;
    assert_eq!(n * n, v.len());
    ComplexMatrix::from_fn(n, |i, j| v[j * n + i])
}

/// Matrix of `ρ ↦ -i[H, ρ] + Σ coeffs_{αβ}(F_α ρ F_β − ½{F_β F_α, ρ})`.
pub fn superoperator_with(h: &ComplexMatrix, coeffs: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(h.dim(), 4);
    assert_eq!(coeffs.dim(), 6);
    let id = ComplexMatrix::identity(4);
    // -i(1⊗H − Hᵀ⊗1)
    let mut m = (&kron(&id, h) - &kron(&h.transpose(), &id)).scale(-I);
    let f = lindblad_operators();
    for alpha in 0..6 {
        for beta in 0..6 {
            let d = coeffs[(alpha, beta)];
            if d == ZERO {
                continue;
            }
            let fbfa = f[beta].matmul(&f[alpha]);
            let jump = kron(&f[beta].transpose(), &f[alpha]);
            let left = kron(&id, &fbfa);
            let right = kron(&fbfa.transpose(), &id);
            let term = &jump - &(&left + &right).scale_real(0.5);
            m = &m + &term.scale(d);
        }
    }
    m
}

/// A time-independent two-qubit generator `-i[H, ·] + L[·]`.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    spec: HamiltonianSpec,
    hamiltonian: ComplexMatrix,
    kossakowski: KossakowskiMatrix,
}

impl LindbladGenerator {
    pub fn new(spec: HamiltonianSpec, kossakowski: KossakowskiMatrix) -> Result<Self> {
        if !spec.is_finite() {
            return Err(Error::NonFinite("Hamiltonian coefficients"));
        }
        let hamiltonian = build_hamiltonian(&spec);
        Ok(Self {
            spec,
            hamiltonian,
            kossakowski,
        })
    }

    /// Purely dissipative generator (`H = 0`).
    pub fn dissipative(kossakowski: KossakowskiMatrix) -> Self {
        Self::new(HamiltonianSpec::zero(), kossakowski).expect("zero Hamiltonian is finite")
    }

    pub fn hamiltonian_spec(&self) -> &HamiltonianSpec {
        &self.spec
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn kossakowski(&self) -> &KossakowskiMatrix {
        &self.kossakowski
    }

    /// `-i[H, ρ] + L[ρ]`.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        &hamiltonian_part(&self.hamiltonian, rho) + &dissipator(&self.kossakowski, rho)
    }

    /// The 16×16 matrix of the generator.
    pub fn superoperator(&self) -> ComplexMatrix {
        superoperator_with(&self.hamiltonian, self.kossakowski.matrix())
    }

    pub fn propagator(&self, t: f64) -> Result<Propagator> {
        Propagator::new(&self.superoperator(), t)
    }

    /// `ρ(t)`; the output is re-Hermitized but never projected onto positive matrices.
    pub fn evolve(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        let raw = self.propagator(t)?.apply(rho0.matrix());
        Ok(DensityMatrix::unchecked(raw.hermitian_part()))
    }
}

/// `exp(t·M)` for a fixed generator matrix `M` and time `t`.
#[derive(Clone, Debug)]
pub struct Propagator {
    t: f64,
    matrix: ComplexMatrix,
}

impl Propagator {
    pub fn new(superop: &ComplexMatrix, t: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        let matrix = if t == 0.0 {
            ComplexMatrix::identity(superop.dim())
        } else {
            expm_scaled(superop, t)?
        };
        Ok(Self { t, matrix })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Applies the map to a 4×4 operator; no symmetrization is done.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        devectorize(&self.matrix.mul_vec(&vectorize(rho)))
    }

    /// Choi matrix `Σ_{ij} |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`.
    pub fn choi_matrix(&self) -> ComplexMatrix {
        let mut choi = ComplexMatrix::zeros(16);
        for i in 0..4 {
            for j in 0..4 {
                let mut unit = ComplexMatrix::zeros(4);
                unit[(i, j)] = C64::new(1.0, 0.0);
                let image = self.apply(&unit);
                for r in 0..4 {
                    for c in 0..4 {
                        choi[(4 * i + r, 4 * j + c)] = image[(r, c)];
                    }
                }
            }
        }
        choi
    }
}

/// `ρ(t)` under `gen`; see [`LindbladGenerator::evolve`].
pub fn evolve(gen: &LindbladGenerator, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    gen.evolve(rho0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::hermitian_eigenvalues;
    use crate::qubit::{bloch_state, pauli};
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_spec_gives_zero_hamiltonian() {
        assert_eq!(build_hamiltonian(&HamiltonianSpec::zero()), ComplexMatrix::zeros(4));
    }

    #[test]
    fn local_sigma3_hamiltonian() {
        let spec = HamiltonianSpec {
            h1: [0.0, 0.0, 1.0],
            ..Default::default()
        };
        assert_eq!(
            build_hamiltonian(&spec),
            ComplexMatrix::diag_real(&[1.0, 1.0, -1.0, -1.0])
        );
    }

    #[test]
    fn heisenberg_coupling_spectrum() {
        let spec = HamiltonianSpec {
            h12: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            ..Default::default()
        };
        let ev = hermitian_eigenvalues(&build_hamiltonian(&spec)).unwrap();
        for (got, want) in ev.iter().zip([-3.0, 1.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-13);
        }
    }

    #[test]
    fn lindblad_operators_hermitian_traceless() {
        for f in lindblad_operators() {
            assert!(f.is_hermitian(0.0));
            assert_eq!(f.trace(), ZERO);
        }
    }

    #[test]
    fn zero_kossakowski_dissipator_vanishes() {
        let rho = DensityMatrix::from_bloch([0.1, 0.2, 0.3], [0.0, -0.5, 0.5]).unwrap();
        let out = dissipator(&KossakowskiMatrix::zero(), rho.matrix());
        assert_eq!(out, ComplexMatrix::zeros(4));
        let block = dissipator_blockform(
            &ComplexMatrix::zeros(3),
            &ComplexMatrix::zeros(3),
            &ComplexMatrix::zeros(3),
            rho.matrix(),
        );
        assert_eq!(block, ComplexMatrix::zeros(4));
    }

    #[test]
    fn depolarizing_first_qubit() {
        // A = 1₃: Σ_i σ_i ρ₁ σ_i − 3ρ₁ = −2σ₃ for ρ₁ = |+⟩⟨+|.
        let d = KossakowskiMatrix::new(
            ComplexMatrix::identity(3),
            ComplexMatrix::zeros(3),
            ComplexMatrix::zeros(3),
        )
        .unwrap();
        let rho1 = bloch_state([0.0, 0.0, 1.0]).unwrap();
        let rho2 = bloch_state([0.3, -0.4, 0.1]).unwrap();
        let out = dissipator(&d, &kron(&rho1, &rho2));
        let expected = kron(&pauli(3).unwrap(), &rho2).scale_real(-2.0);
        assert!(out.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn dissipator_traceless_on_maximally_mixed() {
        let d = KossakowskiMatrix::new(
            ComplexMatrix::identity(3),
            ComplexMatrix::diag_real(&[0.5, -0.2, 0.1]),
            ComplexMatrix::diag_real(&[1.0, 2.0, 0.5]),
        )
        .unwrap();
        let out = dissipator(&d, DensityMatrix::maximally_mixed().matrix());
        assert!(out.trace().norm() < 1e-15);
    }

    #[test]
    fn blockform_without_b_acts_locally() {
        // With B = 0 the A part leaves the second factor untouched.
        let a = ComplexMatrix::from_rows([
            [C64::new(1.0, 0.0), C64::new(0.2, -0.3), ZERO],
            [C64::new(0.2, 0.3), C64::new(0.8, 0.0), ZERO],
            [ZERO, ZERO, C64::new(0.4, 0.0)],
        ]);
        let zero = ComplexMatrix::zeros(3);
        let rho1 = bloch_state([0.2, 0.5, -0.3]).unwrap();
        let rho2 = bloch_state([-0.6, 0.1, 0.2]).unwrap();
        let out = dissipator_blockform(&a, &zero, &zero, &kron(&rho1, &rho2));
        let single = dissipator_blockform(&a, &zero, &zero, &kron(&rho1, &ComplexMatrix::identity(2)));
        // L_A[ρ₁⊗ρ₂] = L_A^{(1)}[ρ₁] ⊗ ρ₂, and L_A^{(1)}[ρ₁] is the first-factor block of `single`.
        let local = ComplexMatrix::from_fn(2, |i, j| single[(2 * i, 2 * j)]);
        assert!(out.approx_eq(&kron(&local, &rho2), 1e-14));
    }

    #[test]
    fn zero_generator_superoperator() {
        let gen = LindbladGenerator::dissipative(KossakowskiMatrix::zero());
        assert_eq!(gen.superoperator(), ComplexMatrix::zeros(16));
    }

    #[test]
    fn vectorize_round_trip_and_convention() {
        let m = ComplexMatrix::from_fn(4, |i, j| C64::new(i as f64, j as f64));
        assert_eq!(devectorize(&vectorize(&m)), m);
        // column stacking: second entry is (1, 0)
        assert_eq!(vectorize(&m)[1], m[(1, 0)]);
    }

    #[test]
    fn evolve_at_zero_is_identity() {
        let gen = LindbladGenerator::dissipative(
            KossakowskiMatrix::new(
                ComplexMatrix::identity(3),
                ComplexMatrix::zeros(3),
                ComplexMatrix::identity(3),
            )
            .unwrap(),
        );
        let rho0 = DensityMatrix::from_bloch([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]).unwrap();
        let out = gen.evolve(&rho0, 0.0).unwrap();
        assert_eq!(out.matrix(), rho0.matrix());
    }

    #[test]
    fn negative_time_rejected() {
        let gen = LindbladGenerator::dissipative(KossakowskiMatrix::zero());
        let rho0 = DensityMatrix::maximally_mixed();
        assert_eq!(gen.evolve(&rho0, -1.0).unwrap_err(), Error::NegativeTime(-1.0));
        assert!(gen.evolve(&rho0, f64::NAN).is_err());
    }

    #[test]
    fn unitary_limit() {
        let spec = HamiltonianSpec {
            h1: [0.0, 0.0, 1.0],
            ..Default::default()
        };
        let gen = LindbladGenerator::new(spec, KossakowskiMatrix::zero()).unwrap();
        let rho0 = DensityMatrix::from_bloch([0.6, 0.0, 0.0], [0.0, 0.8, 0.0]).unwrap();
        for t in [0.3, 1.7, 5.0] {
            let out = gen.evolve(&rho0, t).unwrap();
            // e^{-iHt} is diagonal for H = diag(1, 1, -1, -1).
            let u = ComplexMatrix::from_fn(4, |i, j| {
                if i != j {
                    ZERO
                } else {
                    let e = if i < 2 { 1.0 } else { -1.0 };
                    C64::from_polar(1.0, -e * t)
                }
            });
            let expected = u.matmul(rho0.matrix()).matmul(&u.adjoint());
            assert!(out.matrix().approx_eq(&expected, 1e-13));
            assert_abs_diff_eq!(out.purity(), rho0.purity(), epsilon = 1e-13);
        }
    }

    #[test]
    fn kossakowski_rejects_non_positive_and_non_hermitian() {
        let neg = KossakowskiMatrix::new(
            ComplexMatrix::diag_real(&[1.0, -0.1, 0.0]),
            ComplexMatrix::zeros(3),
            ComplexMatrix::zeros(3),
        );
        assert!(matches!(neg, Err(Error::NotPositive { .. })));
        let mut a = ComplexMatrix::zeros(3);
        a[(0, 1)] = C64::new(1.0, 0.0);
        let nh = KossakowskiMatrix::unchecked(a, ComplexMatrix::zeros(3), ComplexMatrix::zeros(3));
        assert!(matches!(nh, Err(Error::NotHermitian { .. })));
    }
}
