//! Exact lattice-polytope toolkit: Ehrhart data, Futaki-Ono invariants, type F
//! cone triangulations, small/medium weights and Chow stability criteria for
//! polarized toric varieties.

pub mod bits;
pub mod ehrhart;
pub mod error;
pub mod hull;
pub mod integrate;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod stability;
pub mod triangulation;
pub mod weights;

pub use error::{Error, Result};
