//! Exact algebra for homogeneous symplectic and Fedosov structures.
//!
//! Everything here is computed over the rationals (or over the field of
//! rational functions ℚ(x₁,…,xₘ) for chart-level work), so every identity
//! check is an exact zero test. The crate is `no_std` and only needs `alloc`.
//!
//! Modules, bottom-up:
//!
//! * [`scalar`]: arbitrary-precision rationals, multivariate polynomials and
//!   rational functions with partial derivatives.
//! * [`linalg`]: exact row reduction, rank, nullspace and solves.
//! * [`tensor`] and [`symplectic`]: dense tensors, the standard symplectic
//!   form, index lowering and the `s13`/`t12`/`t13` contractions.
//! * [`decomposition`]: Sp(V)-invariant bases and projections for
//!   S²V*⊗V* and ∧²V*⊗V*.
//! * [`model`]: infinitesimal models, Nomizu and transvection algebras,
//!   Bianchi classification of 3-dimensional algebras.
//! * [`chart`]: symbolic torsion, curvature and covariant derivatives on a
//!   single coordinate chart, plus the linear-type identity suite.

#![no_std]

extern crate alloc;

pub mod chart;
pub mod decomposition;
pub mod error;
pub mod linalg;
pub mod model;
pub mod report;
pub mod scalar;
pub mod symplectic;
pub mod tensor;

pub use error::{Error, Result};
pub use report::{Check, VerificationReport};
pub use scalar::{Polynomial, Rational, RationalFunction, Scalar};
pub use symplectic::SymplecticSpace;
pub use tensor::{Slot, Tensor};
