//! Dirichlet characters, their conductors and Gauss sums, and abelian fields
//! described by subgroups of `(Z/fZ)^x`.

mod character;
mod field;
mod kronecker;
mod units;

pub use character::{enumerate_characters, DirichletCharacter, Parity};
pub use field::{characters_of_field, AbelianFieldSpec};
pub use kronecker::{jacobi, kronecker, validate_fundamental_discriminant};
pub use units::{unit_group_structure, UnitGroupStructure, MAX_MODULUS};

/// The primitive character inducing `chi`.
pub fn primitive_part(chi: &DirichletCharacter) -> DirichletCharacter {
    chi.primitive_part()
}

/// The quadratic character `(d/.)` of a fundamental discriminant, as a
/// primitive character mod `|d|`.
pub fn quadratic_character(d: i64) -> crate::Result<DirichletCharacter> {
    validate_fundamental_discriminant(d)?;
    let q = d.unsigned_abs();
    let s = unit_group_structure(q);
    let exps: Vec<i64> = s
        .generators
        .iter()
        .zip(&s.orders)
        .map(|(&g, &o)| if kronecker(d, g) == 1 { 0 } else { (o / 2) as i64 })
        .collect();
    DirichletCharacter::new(q, &exps)
}
