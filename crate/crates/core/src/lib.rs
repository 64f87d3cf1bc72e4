//! Quon algebra: permutations, exact scalars, the Zagier matrix, energy
//! operator coefficients and a Fock space simulator.

pub mod energy;
pub mod error;
pub mod fock;
pub mod group_algebra;
pub mod linalg;
pub mod modp;
pub mod permutation;
pub mod scalar;
pub mod zagier;

pub use error::{Error, Result};
