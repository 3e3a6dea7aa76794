//! Exact-arithmetic workbench for torus-equivariant (co)homology of affine
//! flag varieties and Grassmannians via moment graphs, together with the
//! operator algebras attached to a 1-dimensional group law: shift (difference)
//! operator algebras, nil-Hecke operators, F-de Rham differentials, Kostant
//! centralizer slices, quantized Coulomb-branch presentations, and the
//! Witt/Newton ghost-coordinate transform.
//!
//! Everything is computed over exact rationals; there is no floating point
//! anywhere in the crate.

pub mod action;
pub mod blowup;
pub mod coulomb;
pub mod error;
pub mod fderham;
pub mod gkm;
pub mod grouplaw;
pub mod kostant;
pub mod lattice;
pub mod nilhecke;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod root;
pub mod shift;
pub mod verify;
pub mod witt;

pub use error::Error;
pub use poly::{LaurentPoly, Vars, Q};
pub use ratfunc::RatFunc;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
