//! Exact computational kernels for finite-dimensional noncommutative geometry.

pub mod algebra;
pub mod chern;
pub mod cochain;
pub mod cohomology;
pub mod cyclic_module;
pub mod deformation;
pub mod error;
pub mod hkr;
pub mod hopf;
pub mod groupoid;
pub mod groups;
pub mod star;
pub mod toeplitz;
pub mod wedderburn;
pub mod interval;
pub mod json;
pub mod laurent;
pub mod linalg;
pub mod parse;
pub mod psido;
pub mod scalar;

pub use algebra::{AlgElement, FinAlgebra, LinearFunctional, Representation};
pub use error::{NcgError, Result};
pub use scalar::CycloScalar;
