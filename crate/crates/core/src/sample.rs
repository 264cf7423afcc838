//! Random generators, states and frames for property tests and sweeps.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::frame::InitialStateFrame;
use crate::generator::{HamiltonianSpec, KossakowskiMatrix, Real3};
use crate::matrix::{ComplexMatrix, C64};
use crate::qubit::DensityMatrix;
use crate::transposed::d_tilde_dissipative;
use crate::witness::ProbeVector;
use crate::TOL_PSD;

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// `X·X†` for an `n × rank` Gaussian `X`, scaled to unit trace.
fn wishart<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize, real: bool) -> ComplexMatrix {
    let cols: Vec<Vec<C64>> = (0..rank)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if real {
                        C64::new(normal(rng), 0.0)
                    } else {
                        complex_normal(rng)
                    }
                })
                .collect()
        })
        .collect();
    let m = ComplexMatrix::from_fn(n, |i, j| cols.iter().map(|x| x[i] * x[j].conj()).sum());
    let tr = m.trace().re;
    m.scale_real(1.0 / tr).hermitian_part()
}

fn wishart_any_rank<R: Rng + ?Sized>(rng: &mut R, n: usize, real: bool) -> ComplexMatrix {
    let rank = rng.gen_range(1..=n);
    wishart(rng, n, rank, real)
}

/// Haar-random element of SU(2).
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let q: [f64; 4] = std::array::from_fn(|_| normal(rng));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (a, b) = (C64::new(q[0], q[1]) / n, C64::new(q[2], q[3]) / n);
    ComplexMatrix::from_rows([[a, -b.conj()], [b, a.conj()]])
}

pub fn random_frame<R: Rng + ?Sized>(rng: &mut R) -> InitialStateFrame {
    InitialStateFrame::from_unitaries(random_su2(rng), random_su2(rng)).expect("SU(2) is unitary")
}

/// Random completely positive Kossakowski matrix of random rank and unit trace.
pub fn random_kossakowski<R: Rng + ?Sized>(rng: &mut R) -> KossakowskiMatrix {
    KossakowskiMatrix::from_assembled(&wishart_any_rank(rng, 6, false)).expect("Wishart matrix is PSD")
}

/// Random Hamiltonian with entries of size `scale`; `two_body` controls `h12`.
pub fn random_hamiltonian<R: Rng + ?Sized>(rng: &mut R, scale: f64, two_body: bool) -> HamiltonianSpec {
    let h1 = std::array::from_fn(|_| scale * normal(rng));
    let h2 = std::array::from_fn(|_| scale * normal(rng));
    let h12: Real3 = if two_body {
        std::array::from_fn(|_| std::array::from_fn(|_| scale * normal(rng)))
    } else {
        [[0.0; 3]; 3]
    };
    HamiltonianSpec { h1, h2, h12 }
}

/// Normalized probe with `ψ₁₁ = 0`; `ψ₂₂` is random as well since it does not
/// affect the slope.
pub fn random_admissible_probe<R: Rng + ?Sized>(rng: &mut R) -> ProbeVector {
    let zero = C64::new(0.0, 0.0);
    ProbeVector::normalized(zero, complex_normal(rng), complex_normal(rng), complex_normal(rng))
        .expect("Gaussian vector is nonzero")
}

/// Random mixed two-qubit state of random rank.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    DensityMatrix::new(wishart_any_rank(rng, 4, false)).expect("Wishart matrix is a state")
}

/// Product of two random (possibly mixed) single-qubit states.
pub fn random_product_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let mut bloch = || {
        let dir: [f64; 3] = std::array::from_fn(|_| normal(rng));
        let n = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let r = rng.gen::<f64>().cbrt();
        dir.map(|x| r * x / n)
    };
    let (r1, r2) = (bloch(), bloch());
    DensityMatrix::from_bloch(r1, r2).expect("Bloch vectors inside the ball")
}

/// Random Kossakowski matrix drawn from one of the structural families with a
/// positive `D̃`: `B = 0`, `Re B = 0`, `Im B = 0` with symmetric `C`, or real `D`.
pub fn random_exempt_kossakowski<R: Rng + ?Sized>(rng: &mut R) -> KossakowskiMatrix {
    loop {
        let d = match rng.gen_range(0..4) {
            0 => {
                let a = wishart_any_rank(rng, 3, false);
                let c = wishart_any_rank(rng, 3, false);
                KossakowskiMatrix::new(a, ComplexMatrix::zeros(3), c)
            }
            1 => {
                let shift = rng.gen_range(0.5..2.0);
                let a = &wishart(rng, 3, 3, false) + &ComplexMatrix::identity(3).scale_real(shift);
                let c = &wishart(rng, 3, 3, false) + &ComplexMatrix::identity(3).scale_real(shift);
                let k = ComplexMatrix::from_fn(3, |_, _| C64::new(0.0, 0.3 * normal(rng)));
                KossakowskiMatrix::new(a, k, c)
            }
            2 => {
                let real = wishart_any_rank(rng, 6, true);
                let extra = wishart_any_rank(rng, 3, false);
                KossakowskiMatrix::new(&real.block(0, 0, 3) + &extra, real.block(0, 3, 3), real.block(3, 3, 3))
            }
            _ => KossakowskiMatrix::from_assembled(&wishart_any_rank(rng, 6, true)),
        };
        if let Ok(d) = d {
            if crate::eigen::min_eigenvalue(&d_tilde_dissipative(&d)).expect("Hermitian") >= -TOL_PSD {
                return d;
            }
        }
    }
}
