//! Orbifold constructions on group-theoretical modular categories.
//!
//! Starting from a finite group M and a normal subgroup N, the crate builds
//! the Drinfeld double data of M, the category Rep A of modules over the
//! function algebra on G = M/N, the G-action on its simples with orbit
//! cocycles, the equivariantized category and its braiding, and checks that
//! the result reproduces Rep D(M).

pub mod checks;
pub mod double;
pub mod equivariant;
pub mod error;
pub mod group;
pub mod rep;
pub mod rep_a;
pub mod scalars;
pub mod suite;

pub use error::{Error, Result};
