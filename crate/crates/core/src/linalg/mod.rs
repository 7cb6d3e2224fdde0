//! Exact scalar fields and deterministic sparse linear algebra.

pub mod rational;
pub mod scalar;
pub mod sparse;
pub mod subspace;

pub use rational::Rational;
pub use scalar::{Field, Scalar};
pub use sparse::{Matrix, SparseVec};
pub use subspace::{intersect_kernels, kernel, reduce_against, rref, Echelon, Subspace};
