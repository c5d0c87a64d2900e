//! `(Z/mZ)^*`, Dirichlet characters and the character groups of abelian
//! fields.

mod character;
mod field;
mod unit_group;

pub use character::{DirichletCharacter, Parity};
pub use field::{characters_of_field, CharacterGroup, FieldSpec};
pub use unit_group::{Generator, UnitGroup};

use crate::error::Result;

/// `(Z/mZ)^*` with its deterministic generators.
pub fn unit_group(m: u64) -> UnitGroup {
    UnitGroup::new(m)
}

/// Characters of exact order `p^j` in the field's character group.
pub fn ghat_stratum(spec: &FieldSpec, p: u64, j: u32) -> Result<Vec<DirichletCharacter>> {
    characters_of_field(spec)?.stratum(p, j)
}
