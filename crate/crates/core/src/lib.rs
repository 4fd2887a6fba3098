//! Integral homology of finite permutation groups.
//!
//! Two routes are provided: a Sylow reduction (closed form for cyclic Sylow
//! subgroups of prime order, double-coset stable elements in general) and free
//! resolutions assembled from Wythoff-complex orbit decompositions.

pub mod catalog;
pub mod complex;
pub mod coxeter;
pub mod equivariant;
pub mod engine;
pub mod error;
pub mod finite;
pub mod group;
pub mod homology;
pub mod matrix;
pub mod orbit;
pub mod perm;
pub mod polytope;
pub mod sylow;
pub mod wall;
pub mod zg;

pub use error::{Error, Result};
pub use group::{Bsgs, GenGroup};
pub use homology::{AbelianInvariants, ChainComplex, SparseMatrix};
pub use matrix::{Int, IntMatrix};
pub use perm::Permutation;
