use lfactor_core::exact::{
    bernoulli_number, bernoulli_polynomial, cyclotomic_polynomial, harmonic, CycloElem, Rational,
};
use lfactor_core::special::{BigComplex, BigFloat};
use lfactor_core::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Akiyama–Tanigawa, which yields `B_1 = +1/2`; an independent route to the
/// Bernoulli numbers.
fn akiyama_tanigawa_row(k: usize) -> Rational {
    let mut a: Vec<Rational> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        a.push(Rational::frac(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = (&a[j - 1] - &a[j]) * Rational::from_integer(j as i64);
        }
    }
    a[0].clone()
}

#[test]
fn bernoulli_examples() {
    assert_eq!(bernoulli_number(0), Rational::one());
    assert_eq!(bernoulli_number(1), Rational::frac(-1, 2));
    assert_eq!(bernoulli_number(2), Rational::frac(1, 6));
    assert_eq!(bernoulli_number(12), Rational::frac(-691, 2730));
    assert_eq!(bernoulli_polynomial(1, &Rational::frac(1, 2)), Rational::zero());
    assert_eq!(bernoulli_polynomial(2, &Rational::frac(1, 5)), Rational::frac(1, 150));
    assert_eq!(bernoulli_polynomial(2, &Rational::frac(1, 4)), Rational::frac(-1, 48));
}

#[test]
fn bernoulli_against_akiyama_tanigawa() {
    for k in 0..=40 {
        let mut want = akiyama_tanigawa_row(k);
        if k == 1 {
            want = -want;
        }
        assert_eq!(bernoulli_number(k), want, "B_{k}");
    }
}

#[test]
fn bernoulli_recurrence() {
    for k in 1..=60u64 {
        let s: Rational = (0..=k)
            .map(|j| bernoulli_number(j as usize) * Rational::from_integer(binomial(k + 1, j)))
            .sum();
        assert!(s.is_zero(), "k = {k}");
    }
}

#[test]
fn bernoulli_polynomial_endpoints() {
    for k in 0..=40 {
        assert_eq!(bernoulli_polynomial(k, &Rational::zero()), bernoulli_number(k));
        if k != 1 {
            assert_eq!(bernoulli_polynomial(k, &Rational::one()), bernoulli_number(k));
        }
    }
}

#[test]
fn harmonic_steps() {
    assert_eq!(harmonic(0).value, Rational::zero());
    assert_eq!(harmonic(1).value, Rational::one());
    assert_eq!(harmonic(4).value, Rational::frac(25, 12));
    let mut prev = harmonic(0).value;
    for n in 1..=1000u64 {
        let h = harmonic(n).value;
        assert_eq!(&h - &prev, Rational::frac(1, n as i64));
        prev = h;
    }
}

#[test]
fn cyclotomic_examples() {
    assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
    assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
}

/// `prod_{d | m} Phi_d = T^m - 1`.
#[test]
fn cyclotomic_product() {
    fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    for m in 1..=60u64 {
        let mut p = vec![1i64];
        for d in (1..=m).filter(|d| m % d == 0) {
            p = mul(&p, &cyclotomic_polynomial(d));
        }
        let mut want = vec![0i64; m as usize + 1];
        want[0] = -1;
        want[m as usize] = 1;
        assert_eq!(p, want, "m = {m}");
    }
}

#[test]
fn cyclo_examples() {
    let i = CycloElem::root_of_unity(4, 1);
    assert_eq!(i.mul(&i).unwrap().to_rational(), Some(Rational::from_integer(-1)));
    assert_eq!(i.inverse().unwrap(), i.neg());
    let e = i.embed(1, 128).unwrap();
    assert!(e.re.abs().log2_abs() < -125.0);
    assert!((&e.im - &BigFloat::one(128)).abs().log2_abs() < -125.0);
    assert_eq!(CycloElem::zero(5).inverse(), Err(Error::DivisionByZero));
    assert!(matches!(CycloElem::one(5).add(&CycloElem::one(7)), Err(Error::OrderMismatch { .. })));
    assert!(matches!(i.embed(2, 64), Err(Error::NotCoprime { .. })));
}

const ORDERS: [u64; 5] = [3, 4, 5, 8, 12];

fn elem() -> impl Strategy<Value = CycloElem> {
    (0..ORDERS.len(), prop::collection::vec((-6i64..=6, 1i64..=4), 12)).prop_map(|(oi, cs)| {
        let m = ORDERS[oi];
        let mut e = CycloElem::zero(m);
        for (t, (n, d)) in cs.into_iter().enumerate() {
            let term = CycloElem::root_of_unity(m, t as i64).scale(&Rational::frac(n, d));
            e = e.add(&term).unwrap();
        }
        e
    })
}

fn triple() -> impl Strategy<Value = (CycloElem, CycloElem, CycloElem)> {
    (elem(), prop::collection::vec((-5i64..=5, 1i64..=3), 24)).prop_map(|(a, cs)| {
        let m = a.order();
        let build = |cs: &[(i64, i64)]| {
            cs.iter().enumerate().fold(CycloElem::zero(m), |acc, (t, &(n, d))| {
                acc.add(&CycloElem::root_of_unity(m, t as i64).scale(&Rational::frac(n, d))).unwrap()
            })
        };
        let b = build(&cs[..12]);
        let c = build(&cs[12..]);
        (a, b, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.clone(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            ab.add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), CycloElem::one(a.order()));
        }
    }

    #[test]
    fn embed_is_a_homomorphism((a, b, _c) in triple(), k in 1i64..24) {
        let m = a.order() as i64;
        prop_assume!(num_integer::gcd(k, m) == 1);
        let prec = 128;
        let lhs = a.mul(&b).unwrap().embed(k, prec).unwrap();
        let rhs: BigComplex = &a.embed(k, prec).unwrap() * &b.embed(k, prec).unwrap();
        let scale = BigFloat::one(64).max(&rhs.abs());
        prop_assert!((&lhs - &rhs).abs() < &scale * &BigFloat::one(64).ldexp(8 - prec as i64));
        let sum = a.add(&b).unwrap().embed(k, prec).unwrap();
        let sum2 = &a.embed(k, prec).unwrap() + &b.embed(k, prec).unwrap();
        prop_assert!((&sum - &sum2).abs() < &scale * &BigFloat::one(64).ldexp(8 - prec as i64));
    }

    #[test]
    fn rational_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rational::frac(n, d);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }
}
