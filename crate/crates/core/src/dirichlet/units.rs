//! The unit group `(Z/qZ)^x` with a fixed generator set and discrete logs.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::exact::arith::{factorize, gcd, mod_pow, multiplicative_order, totient};

/// Largest modulus accepted from external input.
pub const MAX_MODULUS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroupStructure {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
}

/// Generators belonging to one prime-power factor `p^e` of the modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Component {
    pub p: u64,
    pub e: u32,
    pub first: usize,
    pub count: usize,
}

#[derive(Debug)]
pub(crate) struct UnitGroup {
    pub structure: UnitGroupStructure,
    pub components: Vec<Component>,
    /// `logs[a]` is the exponent vector of `a`, empty for non-units.
    pub logs: Vec<Vec<u64>>,
    /// Least common multiple of the generator orders.
    pub exponent: u64,
}

fn smallest_primitive_root(pe: u64) -> u64 {
    let phi = totient(pe);
    (2..pe).find(|&g| gcd(g, pe) == 1 && multiplicative_order(g, pe) == phi).unwrap_or(1)
}

/// `x` with `x = r mod m` and `x = 1 mod rest`.
fn crt_lift(r: u64, m: u64, rest: u64) -> u64 {
    let q = m * rest;
    (0..rest).map(|k| r + k * m).find(|&x| x % rest == 1 % rest).unwrap_or(r) % q
}

fn build(q: u64) -> UnitGroup {
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut components = Vec::new();
    for (p, e) in factorize(q) {
        let pe = p.pow(e);
        let rest = q / pe;
        let local: Vec<(u64, u64)> = match (p, e) {
            (2, 1) => vec![],
            (2, 2) => vec![(3, 2)],
            (2, _) => vec![(pe - 1, 2), (5, pe / 4)],
            _ => vec![(smallest_primitive_root(pe), totient(pe))],
        };
        components.push(Component { p, e, first: generators.len(), count: local.len() });
        for (g, o) in local {
            generators.push(crt_lift(g, pe, rest));
            orders.push(o);
        }
    }

    let mut logs = vec![Vec::new(); q as usize];
    for exps in exponent_tuples(&orders) {
        let a = generators.iter().zip(&exps).fold(1 % q, |acc, (&g, &e)| acc * mod_pow(g, e, q) % q);
        logs[a as usize] = exps;
    }
    let exponent = orders.iter().fold(1, |acc, &o| acc / gcd(acc, o) * o);
    UnitGroup {
        structure: UnitGroupStructure { modulus: q, generators, orders },
        components,
        logs,
        exponent,
    }
}

/// All exponent tuples `0 <= e_i < orders[i]` in lexicographic order.
pub(crate) fn exponent_tuples(orders: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let total: u64 = orders.iter().product();
    (0..total).map(move |mut idx| {
        let mut e = vec![0; orders.len()];
        for i in (0..orders.len()).rev() {
            e[i] = idx % orders[i];
            idx /= orders[i];
        }
        e
    })
}

pub(crate) fn unit_group(q: u64) -> Arc<UnitGroup> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.read().unwrap().get(&q) {
        return g.clone();
    }
    let g = Arc::new(build(q));
    cache.write().unwrap().entry(q).or_insert(g).clone()
}

impl UnitGroup {
    /// Exponent vector of `a`, or `None` when `gcd(a, q) > 1`.
    pub fn log(&self, a: i64) -> Option<&[u64]> {
        let q = self.structure.modulus;
        let r = a.rem_euclid(q as i64) as u64;
        if gcd(r, q) != 1 {
            return None;
        }
        Some(&self.logs[r as usize])
    }
}

/// Deterministic generators and orders of `(Z/qZ)^x`.
pub fn unit_group_structure(q: u64) -> UnitGroupStructure {
    assert!(q >= 1, "modulus must be positive");
    unit_group(q).structure.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(unit_group_structure(5), UnitGroupStructure { modulus: 5, generators: vec![2], orders: vec![4] });
        assert_eq!(unit_group_structure(8).generators, vec![7, 5]);
        assert_eq!(unit_group_structure(8).orders, vec![2, 2]);
        assert!(unit_group_structure(1).generators.is_empty());
        assert!(unit_group_structure(2).generators.is_empty());
        assert_eq!(unit_group_structure(4).generators, vec![3]);
    }

    #[test]
    fn logs_cover_every_unit_once() {
        for q in 1..=120u64 {
            let g = unit_group(q);
            let s = &g.structure;
            assert_eq!(s.orders.iter().product::<u64>(), totient(q), "q = {q}");
            let mut seen = std::collections::HashSet::new();
            for a in 0..q {
                if gcd(a, q) == 1 {
                    let l = g.log(a as i64).unwrap().to_vec();
                    let mut back = 1 % q;
                    for (gen, e) in s.generators.iter().zip(&l) {
                        back = back * mod_pow(*gen, *e, q) % q;
                    }
                    assert_eq!(back, a, "q = {q}");
                    assert!(seen.insert(l));
                } else {
                    assert!(g.log(a as i64).is_none());
                }
            }
        }
    }

    #[test]
    fn odd_prime_powers_use_smallest_primitive_root() {
        assert_eq!(unit_group_structure(7).generators, vec![3]);
        assert_eq!(unit_group_structure(9).generators, vec![2]);
        assert_eq!(unit_group_structure(23).generators, vec![5]);
    }
}
