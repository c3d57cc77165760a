//! Quantum harmonic analysis on the finite phase space `(Z_N)^{2n}`.
//!
//! Functions on phase space and operators on `ℓ²((Z_N)^n)` are tied together
//! by Weyl operators, the three QHA convolutions, the symplectic and
//! Fourier–Weyl transforms and Weyl quantization. On top of that sit the
//! doubled algebra `L¹ ⊕ T¹` with its Gelfand theory and ideals, a family of
//! Segal-type norms, and a verification harness that checks the algebraic
//! identities numerically.
//!
//! Everything is generic over the real scalar ([`Real`], `f32` or `f64`);
//! the `*64` aliases below are what most callers want.

pub mod algebra;
pub mod convolution;
pub mod error;
pub mod fixtures;
pub mod function;
pub mod io;
pub mod model;
pub mod norms;
pub mod operator;
pub mod report;
pub mod scalar;
pub mod state;
pub mod transform;
pub mod verify;
pub mod weyl;

#[cfg(test)]
mod testutil;

pub use algebra::QhaPair;
pub use error::{QhaError, Result};
pub use function::PhaseFunction;
pub use model::{symplectic_form, ModelParams, PhasePoint};
pub use operator::{rank_one, Operator};
pub use scalar::{Real, C};
pub use state::StateVector;

pub type PhaseFunction64 = PhaseFunction<f64>;
pub type PhaseFunction32 = PhaseFunction<f32>;
pub type Operator64 = Operator<f64>;
pub type Operator32 = Operator<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type QhaPair64 = QhaPair<f64>;
pub type QhaPair32 = QhaPair<f32>;
