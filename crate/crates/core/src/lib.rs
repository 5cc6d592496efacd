//! Exact computations in the Picard modular group PU(2,1,O₇) over the
//! Eisenstein-like ring O₇ = Z[τ], τ = (1 + i√7)/2.

pub mod config;
pub mod congruence;
pub mod error;
pub mod ford;
pub mod gens;
pub mod heisenberg;
pub mod hermitian;
pub mod mirror;
pub mod presentation;
pub mod tables;
pub mod ring;
pub mod torsion;
pub mod words;

pub use error::{Error, Result};
