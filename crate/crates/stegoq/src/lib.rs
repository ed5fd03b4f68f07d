//! Exact simulation toolkit for steganographic protocols built on stabilizer
//! codes: a phase-exact Pauli algebra, a small dense statevector engine, a
//! catalog of concrete codes, and three protocol drivers (catalytic dense
//! coding, degenerate-error signalling on an entanglement-assisted code, and
//! phase-bit signalling through a split codeword).
//!
//! The numeric layer is generic over the scalar type via [`Real`]; the crate
//! root exports `f64` aliases which the protocol drivers use throughout.

pub mod catalytic;
pub mod codes;
pub mod degenerate;
pub mod error;
pub mod gf2;
pub mod pauli;
pub mod phasebit;
pub mod real;
pub mod state;
pub mod trace;

pub use codes::{catalog, CodeSpec, StabilizerCode, Syndrome};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use pauli::{PauliLetter, PauliOperator, Phase, SupportMask};
pub use real::Real;

/// Dense statevector over `f64` amplitudes (the precision every protocol
/// driver and tolerance in this crate is written against).
pub type StateVector = state::StateVector<f64>;
/// Single-precision statevector, for callers that want the smaller footprint.
pub type StateVector32 = state::StateVector<f32>;

/// Probability 4-vector over 2-bit symbols at `f64` precision.
pub type Distribution4 = degenerate::Distribution4<f64>;
/// Single-precision probability 4-vector.
pub type Distribution4F32 = degenerate::Distribution4<f32>;

/// Amplitude tolerance used for vector equality and eigenstate checks.
pub const AMP_TOL: f64 = 1e-10;
/// Tolerance for probability bookkeeping (distribution sums, entropies).
pub const PROB_TOL: f64 = 1e-12;
