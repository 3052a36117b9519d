//! Weak-majorization envelopes for linear maps on Euclidean Jordan algebras.
//!
//! For a linear map `T` on a rank-`n` algebra there is a unique least
//! nonnegative decreasing vector `eta(T)` with
//! `lambda(|T(x)|) ≺_w eta(T) * lambda(|x|)` for all `x`. This crate computes
//! it exactly for certified-positive maps (the join of the spectra of `T(e)`
//! and `T*(e)`) and brackets it with sampled lower and certified upper bounds
//! otherwise, on real-symmetric, complex-Hermitian, spin, and product
//! algebras. It also ships the vector weak-majorization lattice (w-inf,
//! w-sup, join), stochasticity classifiers, spectral-norm bounds, and a
//! property-test surface for the underlying eigenvalue inequalities.
//!
//! ```
//! use etabound::{eta_estimate, Algebra, Element, LinearOperator, SampleConfig};
//!
//! // The quadratic representation P_a is positive and self-adjoint, so its
//! // envelope is exactly the spectrum of a².
//! let alg = Algebra::RealSymmetric { m: 2 };
//! let a = Element::new(alg, vec![1.0, -0.5, 0.25]).unwrap();
//! let estimate = eta_estimate(&LinearOperator::quad(&a), &SampleConfig::quick());
//! assert!(estimate.exact);
//! for (u, e) in estimate.upper.entries().iter().zip(&a.square().eigenvalues()) {
//!     assert!((u - e).abs() < 1e-10);
//! }
//! ```

pub mod algebra;
pub mod error;
pub mod eta;
pub mod fixtures;
pub mod linalg;
pub mod majorization;
pub mod norms;
pub mod operators;
pub mod selftest;

pub use algebra::{Algebra, Element, JordanFrame, SpectralDecomposition};
pub use error::{Error, Result};
pub use eta::{eta_estimate, CheckOutcome, EtaEstimate, SampleConfig};
pub use majorization::DecVector;
pub use norms::NormOrder;
pub use operators::{ClassificationReport, LinearOperator, Positivity, StructureTag};
