//! Random MAX-k-XOR-SAT over LDPC-transpose ensembles, exact desk-scale DQI
//! and QAOA simulation, closed-form thresholds and landscape probes.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); counts and
//! combinatorial identities use exact integers and rationals. The aliases
//! below fix the scalar to `f64`.

// `!(x > 0)` is deliberate: NaN must fail the guard. Dense linear algebra
// reads better with explicit indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod caps;
pub mod dqi;
pub mod ensembles;
pub mod error;
pub mod f2;
pub mod kravchuk;
pub mod landscape;
pub mod objective;
pub mod qaoa;
pub mod rng;
pub mod scalar;
pub mod thresholds;

pub use ensembles::XorSatInstance;
pub use error::{Error, Result};
pub use f2::{BitMatrix, BitVec, DecodeTable};
pub use scalar::Real;

pub type DqiPolynomial = dqi::DqiPolynomial<f64>;
pub type DqiState = dqi::DqiState<f64>;
pub type DqiOptimum = dqi::DqiOptimum<f64>;
pub type PsiEval = kravchuk::PsiEval<f64>;
pub type Qaoa1Params = thresholds::Qaoa1Params<f64>;
pub type Qaoa1Optimum = thresholds::Qaoa1Optimum<f64>;
pub type Qaoa1Expansion = qaoa::Qaoa1Expansion<f64>;
pub type ThresholdParams = thresholds::ThresholdParams<f64>;
