//! Exact-arithmetic tests for freeness and principality of finite
//! dimensional Hopf-algebra coactions.
//!
//! The toolkit decides whether a finite coaction is free by computing
//! the rank of the canonical Galois map over an exactly represented
//! field, cross-checks the verdict against strong-connection
//! feasibility and strong monoidality of the associated cotensor
//! functor, and specializes everything to finite group actions, Galois
//! field extensions, fibred algebras over finite bases, and finite
//! coverings.

pub mod classical;
pub mod comodule;
pub mod error;
pub mod fibred;
pub mod galois;
pub mod hopf;
pub mod linalg;
pub mod registry;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
