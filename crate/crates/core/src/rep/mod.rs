//! Ordinary and projective representation theory of finite groups.

mod character_table;
mod projective;

pub use character_table::{character_table, decompose_by_characters, CharacterTable};
pub use projective::{
    explicit_irreps, twisted_algebra_irreps, CMatrix, CocycleTable, MatrixRep, TwistedIrreps,
};
