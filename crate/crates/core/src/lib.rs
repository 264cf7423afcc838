//! Two qubits in a common Markovian bath.
//!
//! The crate builds Kossakowski-Lindblad generators for a pair of qubits,
//! integrates them exactly through the matrix exponential of the vectorized
//! generator, and decides whether a given bath can entangle a product initial
//! state. The decision rests on the generator of the partially transposed
//! state, whose coefficient matrix `D̃` need not be positive.
//!
//! Layout:
//! - [`matrix`], [`eigen`], [`expm`]: dense complex linear algebra.
//! - [`qubit`], [`ppt`]: Pauli matrices, states, partial transposition.
//! - [`generator`], [`transposed`]: the flow and its partially transposed twin.
//! - [`frame`], [`witness`], [`criteria`], [`search`], [`fluorescence`]:
//!   entanglement-creation analysis.
//! - [`example_bath`], [`sample`]: a worked family and random samplers.

pub mod criteria;
pub mod eigen;
pub mod error;
pub mod example_bath;
pub mod expm;
pub mod fluorescence;
pub mod frame;
pub mod generator;
pub mod matrix;
pub mod ppt;
pub mod qubit;
pub mod sample;
pub mod search;
pub mod transposed;
pub mod witness;

/// Hermiticity tolerance for input validation.
pub const TOL_HERM: f64 = 1e-10;
/// Unit-trace tolerance for input validation.
pub const TOL_TRACE: f64 = 1e-10;
/// Smallest eigenvalue accepted as nonnegative.
pub const TOL_PSD: f64 = 1e-10;
/// Strictness margin for the creation inequalities.
pub const CREATION_MARGIN: f64 = 1e-12;

pub use criteria::{
    creation_condition, probe_optimum_consistency, structural_exemption, ExemptionReport, SlopeVerdict,
};
pub use error::{Error, Result};
pub use example_bath::ExampleBath;
pub use frame::InitialStateFrame;
pub use generator::{evolve, HamiltonianSpec, KossakowskiMatrix, LindbladGenerator, Propagator};
pub use matrix::{ComplexMatrix, C64};
pub use ppt::{negativity, ppt_min_eigenvalue};
pub use qubit::DensityMatrix;
pub use search::{search_entangling_frame, search_symmetric_frame, SearchOutcome};
pub use transposed::{build_pt_generator, evolve_pt, PTGenerator};
pub use witness::{witness_derivative_general, witness_derivative_numeric, CreationTest, ProbeVector};
