use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize};

use super::character::{enumerate_characters, DirichletCharacter};
use super::kronecker::{kronecker, validate_fundamental_discriminant};
use super::units::MAX_MODULUS;
use crate::error::{Error, Result};
use crate::exact::arith::{gcd, totient};

/// An abelian number field, given as the fixed field of a subgroup `H` of
/// `(Z/fZ)^x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianFieldSpec {
    pub conductor: u64,
    pub subgroup_gens: Vec<u64>,
}

/// Closure of `gens` under multiplication mod `f`.
fn generated_subgroup(f: u64, gens: &[u64]) -> BTreeSet<u64> {
    let mut h = BTreeSet::from([1 % f]);
    let mut frontier = vec![1 % f];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x * g % f;
            if h.insert(y) {
                frontier.push(y);
            }
        }
    }
    h
}

impl AbelianFieldSpec {
    pub fn new(conductor: u64, subgroup_gens: Vec<u64>) -> Result<Self> {
        if conductor == 0 || conductor > MAX_MODULUS {
            return Err(Error::MalformedSubgroup(format!("conductor {conductor} outside 1..={MAX_MODULUS}")));
        }
        if subgroup_gens.len() > 64 {
            return Err(Error::MalformedSubgroup("too many generators".into()));
        }
        for &g in &subgroup_gens {
            if gcd(g % conductor, conductor) != 1 {
                return Err(Error::MalformedSubgroup(format!("{g} is not a unit mod {conductor}")));
            }
        }
        Ok(AbelianFieldSpec { conductor, subgroup_gens })
    }

    /// The quadratic field of fundamental discriminant `d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        validate_fundamental_discriminant(d)?;
        let f = d.unsigned_abs();
        let mut gens = Vec::new();
        let mut h = generated_subgroup(f, &gens);
        for a in 2..f {
            if gcd(a, f) == 1 && kronecker(d, a) == 1 && !h.contains(&a) {
                gens.push(a);
                h = generated_subgroup(f, &gens);
            }
        }
        Self::new(f, gens)
    }

    pub fn subgroup(&self) -> BTreeSet<u64> {
        let gens: Vec<u64> = self.subgroup_gens.iter().map(|g| g % self.conductor).collect();
        generated_subgroup(self.conductor, &gens)
    }

    pub fn degree(&self) -> u64 {
        totient(self.conductor) / self.subgroup().len() as u64
    }

    pub fn is_totally_real(&self) -> bool {
        let f = self.conductor;
        self.subgroup().contains(&((f - 1) % f))
    }

    /// The primitive characters attached to the field, one per character mod
    /// `f` trivial on `H`, in enumeration order.
    pub fn characters(&self) -> Vec<DirichletCharacter> {
        enumerate_characters(self.conductor)
            .into_iter()
            .filter(|chi| self.subgroup_gens.iter().all(|&g| chi.value_exponent(g as i64) == Some(0)))
            .map(|chi| chi.primitive_part())
            .collect()
    }

    /// Compact label `f:g1,g2,...`.
    pub fn label(&self) -> String {
        let g: Vec<String> = self.subgroup_gens.iter().map(u64::to_string).collect();
        format!("{}:{}", self.conductor, g.join(","))
    }
}

pub fn characters_of_field(field: &AbelianFieldSpec) -> Vec<DirichletCharacter> {
    field.characters()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldWire {
    conductor: u64,
    subgroup_gens: Vec<u64>,
}

impl<'de> Deserialize<'de> for AbelianFieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = FieldWire::deserialize(deserializer)?;
        AbelianFieldSpec::new(w.conductor, w.subgroup_gens).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::Parity;

    #[test]
    fn examples() {
        let k = AbelianFieldSpec::new(5, vec![4]).unwrap();
        assert_eq!(k.degree(), 2);
        assert!(k.is_totally_real());
        let chars = k.characters();
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial() && chars[0].modulus() == 1);
        assert_eq!(chars[1].modulus(), 5);
        assert_eq!(chars[1].order(), 2);
        assert!(chars.iter().all(|c| c.parity() == Parity::Even));

        let q = AbelianFieldSpec::new(1, vec![]).unwrap();
        assert_eq!(q.characters().len(), 1);
        assert_eq!(q.degree(), 1);

        let gauss = AbelianFieldSpec::new(4, vec![]).unwrap();
        let chars = gauss.characters();
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[1].parity(), Parity::Odd);
        assert!(!gauss.is_totally_real());
    }

    #[test]
    fn quadratic_shorthand() {
        let k = AbelianFieldSpec::quadratic(5).unwrap();
        assert_eq!(k, AbelianFieldSpec { conductor: 5, subgroup_gens: vec![4] });
        let k8 = AbelianFieldSpec::quadratic(8).unwrap();
        assert_eq!(k8.subgroup_gens, vec![7]);
        assert!(k8.is_totally_real());
        let i = AbelianFieldSpec::quadratic(-4).unwrap();
        assert_eq!(i.degree(), 2);
        assert!(!i.is_totally_real());
        assert!(AbelianFieldSpec::quadratic(-16).is_err());
    }

    #[test]
    fn malformed() {
        assert!(matches!(AbelianFieldSpec::new(6, vec![2]), Err(Error::MalformedSubgroup(_))));
        assert!(serde_json::from_str::<AbelianFieldSpec>(r#"{"conductor":0,"subgroup_gens":[]}"#).is_err());
        let ok: AbelianFieldSpec = serde_json::from_str(r#"{"conductor":8,"subgroup_gens":[7]}"#).unwrap();
        assert_eq!(ok.degree(), 2);
    }
}
