use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use super::units::{exponent_tuples, unit_group, Component, MAX_MODULUS};
use crate::error::{Error, Result};
use crate::exact::arith::{gcd, lcm};
use crate::exact::cyclotomic::MAX_DECODED_ORDER;
use crate::exact::{CycloElem, Rational};
use crate::special::BigComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// 0 for even, 1 for odd.
    pub fn delta(self) -> u64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// A Dirichlet character, identified by its exponents on the generators
/// returned by [`super::unit_group_structure`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DirichletCharacter {
    modulus: u64,
    exponents: Vec<u64>,
    conductor: u64,
    order: u64,
    parity: Parity,
}

fn component_conductor(c: &Component, orders: &[u64], exps: &[u64]) -> u64 {
    let local = |i: usize| {
        let o = orders[c.first + i];
        o / gcd(o, exps[c.first + i])
    };
    match (c.p, c.count) {
        (_, 0) => 1,
        (2, 1) => {
            if exps[c.first] == 0 {
                1
            } else {
                4
            }
        }
        (2, _) => {
            let k = local(1).trailing_zeros();
            if k >= 1 {
                1 << (k + 2)
            } else if exps[c.first] != 0 {
                4
            } else {
                1
            }
        }
        (p, _) => {
            let mut o = local(0);
            if o == 1 {
                return 1;
            }
            let mut k = 0;
            while o % p == 0 {
                o /= p;
                k += 1;
            }
            p.pow(k + 1)
        }
    }
}

impl DirichletCharacter {
    /// The character mod `modulus` with the given generator exponents,
    /// reduced modulo the generator orders.
    pub fn new(modulus: u64, exponents: &[i64]) -> Result<Self> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(Error::Domain(format!("modulus {modulus} outside 1..={MAX_MODULUS}")));
        }
        let group = unit_group(modulus);
        let orders = &group.structure.orders;
        if exponents.len() != orders.len() {
            return Err(Error::Domain(format!(
                "modulus {modulus} has {} generators, got {} exponents",
                orders.len(),
                exponents.len()
            )));
        }
        let exps: Vec<u64> = exponents.iter().zip(orders).map(|(&e, &o)| e.rem_euclid(o as i64) as u64).collect();
        Ok(Self::from_reduced(modulus, exps))
    }

    fn from_reduced(modulus: u64, exponents: Vec<u64>) -> Self {
        let group = unit_group(modulus);
        let orders = &group.structure.orders;
        let order = exponents.iter().zip(orders).fold(1, |acc, (&e, &o)| lcm(acc, o / gcd(o, e)));
        let conductor = group.components.iter().map(|c| component_conductor(c, orders, &exponents)).product();
        let mut chi = DirichletCharacter { modulus, exponents, conductor, order, parity: Parity::Even };
        if chi.value_exponent(-1) != Some(0) {
            chi.parity = Parity::Odd;
        }
        chi
    }

    pub fn trivial(modulus: u64) -> Self {
        let n = unit_group(modulus).structure.orders.len();
        Self::from_reduced(modulus, vec![0; n])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Real-valued (order at most 2).
    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// `t` with `chi(a) = zeta_m^t`, `m` the order; `None` off the units.
    pub fn value_exponent(&self, a: i64) -> Option<u64> {
        let group = unit_group(self.modulus);
        let logs = group.log(a)?;
        let l = group.exponent;
        let mut t = 0u64;
        for ((&k, &e), &o) in logs.iter().zip(&self.exponents).zip(&group.structure.orders) {
            t = (t + (k * e % o) * (l / o)) % l;
        }
        Some(t / (l / self.order))
    }

    pub fn value_at(&self, a: i64) -> CycloElem {
        match self.value_exponent(a) {
            Some(t) => CycloElem::root_of_unity(self.order, t as i64),
            None => CycloElem::zero(self.order),
        }
    }

    /// `chi(a)` embedded with `zeta_m -> e^{2 pi i/m}`.
    pub fn value_complex(&self, a: i64, prec: usize) -> BigComplex {
        match self.value_exponent(a) {
            Some(t) => BigComplex::root_of_unity(self.order, t as i64, prec),
            None => BigComplex::zero(prec),
        }
    }

    pub fn conj(&self) -> Self {
        let orders = &unit_group(self.modulus).structure.orders;
        let exps = self.exponents.iter().zip(orders).map(|(&e, &o)| (o - e) % o).collect();
        Self::from_reduced(self.modulus, exps)
    }

    /// The primitive character inducing this one.
    pub fn primitive_part(&self) -> Self {
        let f = self.conductor;
        if f == self.modulus {
            return self.clone();
        }
        let target = unit_group(f);
        let exps = target
            .structure
            .generators
            .iter()
            .zip(&target.structure.orders)
            .map(|(&h, &o)| {
                let lift = (0..self.modulus)
                    .map(|k| h + k * f)
                    .find(|&a| gcd(a, self.modulus) == 1)
                    .expect("units lift along reduction");
                let t = self.value_exponent(lift as i64).unwrap();
                t * o / self.order
            })
            .collect();
        Self::from_reduced(f, exps)
    }

    /// Compact label `q:e1,e2,...`.
    pub fn label(&self) -> String {
        let e: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        format!("{}:{}", self.modulus, e.join(","))
    }

    /// Gauss sum `sum_a chi(a) e^{2 pi i a/q}` of a primitive character,
    /// accumulated exactly in `Q(zeta_lcm(m, q))` and embedded once.
    pub fn gauss_sum(&self, prec: usize) -> Result<BigComplex> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive { modulus: self.modulus, conductor: self.conductor });
        }
        self.gauss_sum_exact()?.embed(1, prec)
    }

    pub fn gauss_sum_exact(&self) -> Result<CycloElem> {
        let q = self.modulus;
        let big = lcm(self.order, q);
        if big > MAX_DECODED_ORDER {
            return Err(Error::Unsupported(format!("Gauss sum in Q(zeta_{big})")));
        }
        let mut sums = vec![Rational::zero(); big as usize];
        for a in 0..q {
            if let Some(t) = self.value_exponent(a as i64) {
                let k = (t * (big / self.order) + a * (big / q)) % big;
                sums[k as usize] += Rational::one();
            }
        }
        Ok(CycloElem::from_power_sums(big, &sums))
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All `phi(q)` characters mod `q`, exponent tuples in lexicographic order.
pub fn enumerate_characters(q: u64) -> Vec<DirichletCharacter> {
    let group = unit_group(q);
    exponent_tuples(&group.structure.orders).map(|e| DirichletCharacter::from_reduced(q, e)).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterWire {
    modulus: u64,
    exponents: Vec<i64>,
    conductor: u64,
    order: u64,
    parity: Parity,
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = CharacterWire::deserialize(deserializer)?;
        let chi = DirichletCharacter::new(w.modulus, &w.exponents).map_err(D::Error::custom)?;
        if chi.exponents.iter().zip(&w.exponents).any(|(&a, &b)| a as i64 != b) {
            return Err(D::Error::custom("exponents not reduced"));
        }
        if chi.conductor != w.conductor || chi.order != w.order || chi.parity != w.parity {
            return Err(D::Error::custom(format!(
                "inconsistent character data; expected conductor {}, order {}, parity {:?}",
                chi.conductor, chi.order, chi.parity
            )));
        }
        Ok(chi)
    }
}
