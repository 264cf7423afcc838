//! Closed-form entanglement-creation criteria.
//!
//! For a product initial state fixed by a frame `(𝒰, 𝒱)` and a probe with
//! `ψ₁₁ = 0`, the initial slope of `E(t)` is a Hermitian quadratic form in
//! `(ψ₂₁, ψ₁₂)`:
//!
//! ```text
//! ∂_t E(0) = |ψ₂₁|²⟨u|A|u⟩ + |ψ₁₂|²⟨v|Cᵀ|v⟩ − 2 Re(ψ₂₁* ψ₁₂ ⟨u|Re B|v⟩)
//! ```
//!
//! Some probe makes it negative iff the 2×2 form is indefinite, which for
//! completely positive `D` is `⟨u|A|u⟩⟨v|Cᵀ|v⟩ < |⟨u|Re B|v⟩|²`.
//! [`creation_condition`] evaluates that inequality; [`probe_optimum_consistency`]
//! rebuilds the 2×2 form from the full 6×6 expression and diagonalizes it,
//! which also yields the optimal probe.

use crate::eigen::hermitian_eigenvalues;
use crate::frame::InitialStateFrame;
use crate::generator::KossakowskiMatrix;
use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::transposed::d_tilde_dissipative;
use crate::witness::{witness_derivative_general, CreationTest, ProbeVector};
use crate::{CREATION_MARGIN, TOL_HERM, TOL_PSD};

/// The three scalars entering the probe-independent condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CreationTerms {
    /// `⟨u|A|u⟩`
    pub u_a_u: f64,
    /// `⟨v|Cᵀ|v⟩`
    pub v_ct_v: f64,
    /// `⟨u|Re B|v⟩`
    pub u_reb_v: C64,
}

impl CreationTerms {
    pub fn compute(d: &KossakowskiMatrix, test: &CreationTest) -> Self {
        let (u, v) = (test.u(), test.v());
        Self {
            u_a_u: d.a().sandwich(u, u).re,
            v_ct_v: d.c().transpose().sandwich(v, v).re,
            u_reb_v: d.b().re().sandwich(u, v),
        }
    }

    /// `|⟨u|Re B|v⟩|² − ⟨u|A|u⟩⟨v|Cᵀ|v⟩`; positive means creation.
    pub fn excess(&self) -> f64 {
        self.u_reb_v.norm_sqr() - self.u_a_u * self.v_ct_v
    }

    /// Smallest eigenvalue of the 2×2 form, i.e. the most negative slope over
    /// normalized probes.
    pub fn min_slope(&self) -> f64 {
        let mean = 0.5 * (self.u_a_u + self.v_ct_v);
        let half_gap = 0.5 * (self.u_a_u - self.v_ct_v);
        mean - half_gap.hypot(self.u_reb_v.norm())
    }
}

/// Sign of an initial witness slope, with zero treated as undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeVerdict {
    Creates,
    /// `|slope| ≤ CREATION_MARGIN`; only higher derivatives can decide.
    IndeterminateFirstOrder,
    NoCreation,
}

impl SlopeVerdict {
    pub fn classify(slope: f64) -> Self {
        if slope < -CREATION_MARGIN {
            Self::Creates
        } else if slope <= CREATION_MARGIN {
            Self::IndeterminateFirstOrder
        } else {
            Self::NoCreation
        }
    }
}

/// `⟨u|A|u⟩⟨v|Cᵀ|v⟩ < |⟨u|Re B|v⟩|²` with strictness margin [`CREATION_MARGIN`].
pub fn creation_condition(d: &KossakowskiMatrix, frame: &InitialStateFrame) -> bool {
    let terms = CreationTerms::compute(d, &CreationTest::new(frame.clone()));
    terms.excess() > CREATION_MARGIN
}

/// Minimum of the slope over normalized probes for one frame.
#[derive(Clone, Debug)]
pub struct ProbeOptimum {
    /// `minimum < −CREATION_MARGIN`
    pub creates: bool,
    pub minimum: f64,
    pub best_probe: ProbeVector,
}

/// Minimizes the 6×6 slope expression over `(ψ₂₁, ψ₁₂)` with `|ψ₂₁|² + |ψ₁₂|² = 1`.
///
/// The 2×2 Hermitian form is recovered from evaluations of
/// [`witness_derivative_general`] by polarization, not from `u`, `v`.
pub fn probe_optimum_consistency(d: &KossakowskiMatrix, frame: &InitialStateFrame) -> ProbeOptimum {
    probe_optimum_for(&d_tilde_dissipative(d), frame)
}

/// As [`probe_optimum_consistency`] for an explicit `D̃`.
pub fn probe_optimum_for(d_tilde: &ComplexMatrix, frame: &InitialStateFrame) -> ProbeOptimum {
    let q = |psi21: C64, psi12: C64| {
        let probe = ProbeVector {
            psi11: ZERO,
            psi12,
            psi21,
            psi22: ZERO,
        };
        witness_derivative_general(d_tilde, frame, &probe).expect("ψ11 = 0 and D̃ is 6x6")
    };
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let m11 = q(one, ZERO);
    let m22 = q(ZERO, one);
    let re12 = 0.5 * (q(one, one) - m11 - m22);
    let im12 = 0.5 * (m11 + m22 - q(one, i));
    let m12 = C64::new(re12, im12);
    let form = ComplexMatrix::from_rows([[C64::new(m11, 0.0), m12], [m12.conj(), C64::new(m22, 0.0)]]);
    let minimum = hermitian_eigenvalues(&form).expect("2x2 form is Hermitian")[0];

    // Eigenvector of [[m11, m12], [m12*, m22]] for `minimum`; take the better
    // conditioned of the two row-derived candidates.
    let cand1 = [m12, C64::new(minimum - m11, 0.0)];
    let cand2 = [C64::new(m22 - minimum, 0.0), -m12.conj()];
    let norm = |c: &[C64; 2]| c[0].norm_sqr() + c[1].norm_sqr();
    let mut phi = if norm(&cand1) >= norm(&cand2) { cand1 } else { cand2 };
    if norm(&phi) < 1e-300 {
        phi = if m11 <= m22 { [one, ZERO] } else { [ZERO, one] };
    }
    let best_probe = ProbeVector::off_diagonal(phi[1], phi[0]).expect("nonzero eigenvector");
    ProbeOptimum {
        creates: minimum < -CREATION_MARGIN,
        minimum,
        best_probe,
    }
}

/// Structural reasons why a bath can never create entanglement.
#[derive(Clone, Debug)]
pub struct ExemptionReport {
    /// Case 1: `B = 0`.
    pub b_zero: bool,
    /// Case 2: `Re B = 0`.
    pub re_b_zero: bool,
    /// Case 3: `Im B = 0` and (`Cᵀ = C` or `Aᵀ = A`).
    pub im_b_zero_and_one_block_symmetric: bool,
    /// Case 4: `Aᵀ = A` and `Cᵀ = C`.
    pub both_blocks_symmetric: bool,
    /// Ascending spectrum of `D̃` (two-body Hamiltonian ignored).
    pub d_tilde_spectrum: Vec<f64>,
    /// `D̃` positive within the tolerance used to build the report.
    pub d_tilde_psd: bool,
}

impl ExemptionReport {
    pub fn any_case(&self) -> bool {
        self.b_zero
            || self.re_b_zero
            || self.im_b_zero_and_one_block_symmetric
            || self.both_blocks_symmetric
    }

    /// Entanglement creation is ruled out for every initial state.
    pub fn no_creation_certified(&self) -> bool {
        self.d_tilde_psd
    }

    pub fn d_tilde_min_eigenvalue(&self) -> f64 {
        self.d_tilde_spectrum[0]
    }
}

fn is_zero(m: &ComplexMatrix, tol: f64) -> bool {
    m.max_abs() <= tol
}

fn is_symmetric(m: &ComplexMatrix, tol: f64) -> bool {
    m.max_abs_diff(&m.transpose()) <= tol
}

pub fn structural_exemption(d: &KossakowskiMatrix) -> ExemptionReport {
    structural_exemption_with_tol(d, TOL_HERM, TOL_PSD)
}

pub fn structural_exemption_with_tol(d: &KossakowskiMatrix, tol_equal: f64, tol_psd: f64) -> ExemptionReport {
    let b_zero = is_zero(d.b(), tol_equal);
    let re_b_zero = is_zero(&d.b().re(), tol_equal);
    let im_b_zero = is_zero(&d.b().im(), tol_equal);
    let a_sym = is_symmetric(d.a(), tol_equal);
    let c_sym = is_symmetric(d.c(), tol_equal);
    let d_tilde_spectrum =
        hermitian_eigenvalues(&d_tilde_dissipative(d)).expect("D̃ is Hermitian by construction");
    let d_tilde_psd = d_tilde_spectrum[0] >= -tol_psd;
    ExemptionReport {
        b_zero,
        re_b_zero,
        im_b_zero_and_one_block_symmetric: im_b_zero && (a_sym || c_sym),
        both_blocks_symmetric: a_sym && c_sym,
        d_tilde_spectrum,
        d_tilde_psd,
    }
}

/// `|⟨u|Im A|u⟩|²` for the symmetric frame `|a₁⟩ = |b₁⟩`.
pub fn fluorescence_indicator(a: &ComplexMatrix, frame: &InitialStateFrame) -> f64 {
    let test = CreationTest::new(frame.clone());
    a.im().sandwich(test.u(), test.u()).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example_bath::ExampleBath;

    #[test]
    fn slope_verdict_bands() {
        assert_eq!(SlopeVerdict::classify(-1e-6), SlopeVerdict::Creates);
        assert_eq!(SlopeVerdict::classify(0.0), SlopeVerdict::IndeterminateFirstOrder);
        assert_eq!(SlopeVerdict::classify(-CREATION_MARGIN), SlopeVerdict::IndeterminateFirstOrder);
        assert_eq!(SlopeVerdict::classify(1e-6), SlopeVerdict::NoCreation);
    }

    #[test]
    fn example_bath_identity_frame_terms() {
        let (a, b) = (0.3, -0.45);
        let d = ExampleBath::new(a, b).kossakowski().unwrap();
        let terms = CreationTerms::compute(&d, &CreationTest::new(InitialStateFrame::identity()));
        assert!((terms.u_a_u - 2.0 * (1.0 - a)).abs() < 1e-14);
        assert!((terms.v_ct_v - 2.0 * (1.0 - a)).abs() < 1e-14);
        assert!((terms.u_reb_v.norm() - 2.0 * b.abs()).abs() < 1e-14);
    }

    #[test]
    fn example_bath_creation_at_identity_frame() {
        let frame = InitialStateFrame::identity();
        // (1 − a)² < b²
        assert!(creation_condition(&ExampleBath::new(0.8, 0.6).kossakowski().unwrap(), &frame));
        assert!(creation_condition(&ExampleBath::new(0.9, -0.3).kossakowski().unwrap(), &frame));
        assert!(!creation_condition(&ExampleBath::new(0.5, 0.4).kossakowski().unwrap(), &frame));
        assert!(!creation_condition(&ExampleBath::new(-0.9, 0.3).kossakowski().unwrap(), &frame));
    }

    #[test]
    fn probe_optimum_example() {
        let d = ExampleBath::new(0.8, 0.6).kossakowski().unwrap();
        let opt = probe_optimum_consistency(&d, &InitialStateFrame::identity());
        assert!(opt.creates);
        // eigenvalues of [[0.4, −1.2], [−1.2, 0.4]]
        assert!((opt.minimum - (0.4 - 1.2)).abs() < 1e-13);
        let value = witness_derivative_general(
            &d_tilde_dissipative(&d),
            &InitialStateFrame::identity(),
            &opt.best_probe,
        )
        .unwrap();
        assert!((value - opt.minimum).abs() < 1e-13);
        assert!(opt.best_probe.is_entangled());
    }

    #[test]
    fn b_zero_never_creates() {
        let d = KossakowskiMatrix::new(
            ExampleBath::new(0.7, 0.0).a_block(),
            ComplexMatrix::zeros(3),
            ExampleBath::new(-0.4, 0.0).a_block(),
        )
        .unwrap();
        for frame in [
            InitialStateFrame::identity(),
            InitialStateFrame::from_euler([0.3, 1.0, 0.0], [2.0, 0.4, 0.0]),
        ] {
            assert!(!creation_condition(&d, &frame));
            let opt = probe_optimum_consistency(&d, &frame);
            assert!(!opt.creates && opt.minimum >= -1e-14);
        }
        let report = structural_exemption(&d);
        assert!(report.b_zero && report.re_b_zero && report.d_tilde_psd);
    }

    #[test]
    fn example_bath_has_no_exemption() {
        let report = structural_exemption(&ExampleBath::new(0.8, 0.6).kossakowski().unwrap());
        assert!(!report.any_case());
        assert!(!report.d_tilde_psd);
        assert!(report.d_tilde_min_eigenvalue() < -0.1);
    }

    #[test]
    fn symmetric_blocks_give_symmetrized_d_tilde() {
        // A, C real symmetric, B real: case 4 with D̃ = (D + Dᵀ)/2.
        let a = ComplexMatrix::from_real([[1.0, 0.2, 0.0], [0.2, 0.8, 0.1], [0.0, 0.1, 0.5]]);
        let c = ComplexMatrix::from_real([[0.9, 0.0, 0.3], [0.0, 0.7, 0.0], [0.3, 0.0, 0.6]]);
        let b = ComplexMatrix::from_real([[0.2, -0.1, 0.0], [0.3, 0.1, 0.0], [0.0, 0.05, -0.2]]);
        let d = KossakowskiMatrix::new(a, b, c).unwrap();
        let report = structural_exemption(&d);
        assert!(report.both_blocks_symmetric && report.d_tilde_psd);
        let sym = (d.matrix() + &d.matrix().transpose()).scale_real(0.5);
        assert!(d_tilde_dissipative(&d).approx_eq(&sym, 1e-15));
    }

    #[test]
    fn fluorescence_indicator_vanishes_for_real_a() {
        let a = ComplexMatrix::diag_real(&[1.0, 1.0, 0.0]);
        let frame = InitialStateFrame::from_euler([0.3, 1.2, 0.0], [0.3, 1.2, 0.0]);
        assert_eq!(fluorescence_indicator(&a, &frame), 0.0);
    }
}
