use std::collections::BTreeSet;

use lfactor_core::dirichlet::{
    enumerate_characters, quadratic_character, unit_group_structure, AbelianFieldSpec, DirichletCharacter, Parity,
};
use lfactor_core::exact::arith::{gcd, totient};
use lfactor_core::exact::{CycloElem, Rational};
use lfactor_core::special::BigFloat;
use lfactor_core::Error;
use proptest::prelude::*;

fn units(q: u64) -> Vec<u64> {
    (1..=q).filter(|&a| gcd(a, q) == 1).map(|a| a % q).collect()
}

#[test]
fn unit_group_examples() {
    let s = unit_group_structure(5);
    assert_eq!((s.generators, s.orders), (vec![2], vec![4]));
    let s = unit_group_structure(8);
    assert_eq!((s.generators, s.orders), (vec![7, 5], vec![2, 2]));
    assert!(unit_group_structure(1).generators.is_empty());
}

/// Generators really generate, and the orders multiply to phi(q).
#[test]
fn unit_group_generates() {
    for q in 1..=200u64 {
        let s = unit_group_structure(q);
        assert_eq!(s.orders.iter().product::<u64>(), totient(q), "q = {q}");
        let mut seen = BTreeSet::from([1 % q]);
        let mut frontier = vec![1 % q];
        while let Some(x) = frontier.pop() {
            for &g in &s.generators {
                let y = x * g % q;
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(seen.len() as u64, totient(q), "q = {q}");
    }
}

#[test]
fn enumeration_examples() {
    let c4 = enumerate_characters(4);
    assert_eq!(c4.len(), 2);
    assert!(c4[0].is_trivial() && c4[0].conductor() == 1 && c4[0].parity() == Parity::Even);
    assert_eq!((c4[1].conductor(), c4[1].parity()), (4, Parity::Odd));
    assert_eq!(c4[1].value_at(3).to_rational(), Some(Rational::from_integer(-1)));
    assert!(c4[1].value_at(2).is_zero());
    assert_eq!(enumerate_characters(1).len(), 1);
    let c5 = enumerate_characters(5);
    let quad: Vec<_> = c5.iter().filter(|c| c.order() == 2).collect();
    assert_eq!(quad.len(), 1);
    assert!(quad[0].is_primitive() && quad[0].parity() == Parity::Even);
}

#[test]
fn primitive_part_examples() {
    let t12 = DirichletCharacter::trivial(12);
    assert_eq!(t12.primitive_part(), DirichletCharacter::trivial(1));
    let chi4 = quadratic_character(-4).unwrap();
    let lifted = enumerate_characters(8)
        .into_iter()
        .find(|c| c.conductor() == 4)
        .expect("a character mod 8 of conductor 4");
    assert_eq!(lifted.primitive_part(), chi4);
    for a in units(8) {
        assert_eq!(lifted.value_at(a as i64), chi4.value_at(a as i64));
    }
    assert_eq!(chi4.primitive_part(), chi4);
}

#[test]
fn gauss_sum_examples() {
    let p = 128;
    let one = DirichletCharacter::trivial(1).gauss_sum(p).unwrap();
    assert!((&one.re - &BigFloat::one(p)).abs().log2_abs() < -120.0);
    let t4 = quadratic_character(-4).unwrap().gauss_sum(p).unwrap();
    assert!(t4.re.abs().log2_abs() < -120.0);
    assert!((&t4.im - &BigFloat::from_i64(2, p)).abs().log2_abs() < -120.0);
    let t5 = quadratic_character(5).unwrap().gauss_sum(p).unwrap();
    assert!((&t5.re - &BigFloat::from_i64(5, p).sqrt()).abs().log2_abs() < -120.0);
    assert!(matches!(DirichletCharacter::trivial(3).gauss_sum(p), Err(Error::NotPrimitive { .. })));
}

#[test]
fn field_examples() {
    let k = AbelianFieldSpec::new(5, vec![4]).unwrap();
    let cs = k.characters();
    assert_eq!(cs.len(), 2);
    assert!(cs.contains(&DirichletCharacter::trivial(1)));
    assert!(cs.contains(&quadratic_character(5).unwrap()));
    assert_eq!(AbelianFieldSpec::new(1, vec![]).unwrap().characters(), vec![DirichletCharacter::trivial(1)]);
    let gauss = AbelianFieldSpec::new(4, vec![]).unwrap().characters();
    assert_eq!(gauss, vec![DirichletCharacter::trivial(1), quadratic_character(-4).unwrap()]);
    assert!(matches!(AbelianFieldSpec::new(6, vec![2]), Err(Error::MalformedSubgroup(_))));
}

/// Smallest `d | q` such that `chi` is trivial on units congruent to 1 mod `d`.
fn brute_conductor(chi: &DirichletCharacter) -> u64 {
    let q = chi.modulus();
    (1..=q)
        .filter(|d| q.is_multiple_of(*d))
        .find(|&d| units(q).into_iter().filter(|a| a % d == 1 % d).all(|a| chi.value_exponent(a as i64) == Some(0)))
        .unwrap()
}

#[test]
fn orthogonality_parity_conductor() {
    for q in 1..=60u64 {
        let chars = enumerate_characters(q);
        assert_eq!(chars.len() as u64, totient(q));
        for chi in &chars {
            let m = chi.order();
            let mut s = CycloElem::zero(m);
            for a in 0..q {
                s = s.add(&chi.value_at(a as i64)).unwrap();
            }
            if chi.is_trivial() {
                assert_eq!(s.to_rational(), Some(Rational::from_integer(totient(q) as i64)));
            } else {
                assert!(s.is_zero(), "{chi:?}");
            }
            let minus_one = chi.value_at(q as i64 - 1);
            let even = minus_one == CycloElem::one(m);
            assert_eq!(even, chi.parity() == Parity::Even, "{chi:?}");
            assert_eq!(chi.conductor(), brute_conductor(chi), "{chi:?}");
            assert_eq!(q % chi.conductor(), 0);
        }
    }
}

#[test]
fn gauss_sum_modulus() {
    let prec = 160;
    for q in 1..=60u64 {
        for chi in enumerate_characters(q).into_iter().filter(DirichletCharacter::is_primitive) {
            let t = chi.gauss_sum(prec).unwrap();
            let r = (&t.norm_sqr() - &BigFloat::from_u64(q, prec)).abs();
            let tol = BigFloat::from_u64(q, 64).ldexp(12 - prec as i64);
            assert!(r < tol, "{chi:?}");
        }
    }
}

/// Brute-force subgroup generated by `gens`.
fn closure(f: u64, gens: &[u64]) -> BTreeSet<u64> {
    let mut h = BTreeSet::from([1 % f]);
    loop {
        let next: BTreeSet<u64> = h.iter().flat_map(|&x| gens.iter().map(move |&g| x * g % f)).collect();
        let before = h.len();
        h.extend(next);
        if h.len() == before {
            return h;
        }
    }
}

#[test]
fn field_kernels() {
    for f in 1..=40u64 {
        let us = units(f);
        // every cyclic subgroup, and every subgroup generated by two units
        let mut specs: Vec<Vec<u64>> = us.iter().map(|&g| vec![g]).collect();
        for (i, &a) in us.iter().enumerate() {
            for &b in &us[i + 1..] {
                specs.push(vec![a, b]);
            }
        }
        specs.push(vec![]);
        for gens in specs {
            let k = AbelianFieldSpec::new(f, gens.clone()).unwrap();
            let h = closure(f, &gens);
            let chars = k.characters();
            assert_eq!(chars.len() as u64 * h.len() as u64, totient(f), "f = {f} H = {gens:?}");
            let kernel: BTreeSet<u64> = us
                .iter()
                .copied()
                .filter(|&a| chars.iter().all(|c| c.value_exponent(a as i64) == Some(0)))
                .collect();
            assert_eq!(kernel, h, "f = {f} H = {gens:?}");
            if k.is_totally_real() {
                assert!(chars.iter().all(|c| c.parity() == Parity::Even));
            }
        }
    }
}

fn character() -> impl Strategy<Value = DirichletCharacter> {
    (1u64..=120).prop_flat_map(|q| {
        let n = enumerate_characters(q).len();
        (Just(q), 0..n)
    })
    .prop_map(|(q, i)| enumerate_characters(q).swap_remove(i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplicativity(chi in character(), a in -500i64..500, b in -500i64..500) {
        let lhs = chi.value_at(a * b);
        let rhs = chi.value_at(a).mul(&chi.value_at(b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn periodicity_and_conjugate(chi in character(), a in -500i64..500) {
        let q = chi.modulus() as i64;
        prop_assert_eq!(chi.value_at(a), chi.value_at(a + q));
        let prod = chi.value_at(a).mul(&chi.conj().value_at(a)).unwrap();
        let unit = gcd(a.rem_euclid(q) as u64, q as u64) == 1;
        prop_assert_eq!(prod.to_rational(), Some(Rational::from_integer(unit as i64)));
    }

    #[test]
    fn json_roundtrip(chi in character()) {
        let text = serde_json::to_string(&chi).unwrap();
        let back: DirichletCharacter = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, chi);
    }
}
