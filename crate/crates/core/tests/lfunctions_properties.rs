use lfactor_core::dirichlet::{enumerate_characters, quadratic_character, AbelianFieldSpec, DirichletCharacter, Parity};
use lfactor_core::exact::Rational;
use lfactor_core::lfunctions::{
    dedekind_logderiv, dedekind_via_ideals, gen_bernoulli, l_deriv, l_exact_nonpos, l_logderiv_neg, l_pair, l_value,
    Routes,
};
use lfactor_core::special::{log_gamma, BigComplex, BigFloat, Evaluation};
use lfactor_core::Error;

fn s_at(n: i64, p: usize) -> BigComplex {
    BigComplex::from_i64(n, p)
}

fn lit(text: &str, p: usize) -> BigFloat {
    BigFloat::parse_decimal(text, p).unwrap()
}

fn slack(p: usize) -> BigFloat {
    BigFloat::one(64).ldexp(8 - p as i64)
}

fn primitive_upto(q: u64) -> impl Iterator<Item = DirichletCharacter> {
    (1..=q).flat_map(enumerate_characters).filter(DirichletCharacter::is_primitive)
}

fn parity_ok(chi: &DirichletCharacter, n: u32) -> bool {
    (chi.parity() == Parity::Even) == n.is_multiple_of(2)
}

#[test]
fn gen_bernoulli_examples() {
    let chi4 = quadratic_character(-4).unwrap();
    let chi5 = quadratic_character(5).unwrap();
    assert_eq!(gen_bernoulli(1, &chi4).value.to_rational(), Some(Rational::frac(-1, 2)));
    assert_eq!(gen_bernoulli(2, &chi5).value.to_rational(), Some(Rational::frac(4, 5)));
    assert!(gen_bernoulli(2, &chi4).value.is_zero());
}

#[test]
fn exact_value_examples() {
    let triv = DirichletCharacter::trivial(1);
    let chi4 = quadratic_character(-4).unwrap();
    let chi5 = quadratic_character(5).unwrap();
    assert_eq!(l_exact_nonpos(2, &triv).unwrap().to_rational(), Some(Rational::frac(-1, 12)));
    assert_eq!(l_exact_nonpos(1, &chi4).unwrap().to_rational(), Some(Rational::frac(1, 2)));
    assert_eq!(l_exact_nonpos(2, &chi5).unwrap().to_rational(), Some(Rational::frac(-2, 5)));
    assert_eq!(l_exact_nonpos(1, &triv), Err(Error::ExcludedCase));
}

/// Parity mismatch is the only way to vanish.
#[test]
fn zeros_follow_parity() {
    for chi in primitive_upto(30) {
        for n in 1..=6u32 {
            let b = gen_bernoulli(n, &chi).value;
            let classical = n == 1 && chi.is_trivial();
            assert_eq!(b.is_zero(), !parity_ok(&chi, n) && !classical, "{} n = {n}", chi.label());
        }
    }
}

/// Catalan's constant from the central binomial series
/// `G = pi/8 log(2 + sqrt 3) + 3/8 sum n!^2 / ((2n)! (2n+1)^2)`.
fn catalan(p: usize) -> BigFloat {
    let mut sum = BigFloat::zero(p);
    let mut ratio = BigFloat::one(p);
    for n in 0..200i64 {
        if n > 0 {
            ratio = ratio.mul_i64(n).div_i64(2 * (2 * n - 1));
        }
        sum = &sum + &ratio.div_i64((2 * n + 1) * (2 * n + 1));
    }
    let r3 = BigFloat::from_i64(3, p).sqrt();
    let lead = (&BigFloat::pi(p) * &(&BigFloat::from_i64(2, p) + &r3).ln()).div_i64(8);
    &lead + &sum.mul_i64(3).div_i64(8)
}

#[test]
fn l_value_examples() {
    let p = 192;
    let chi4 = quadratic_character(-4).unwrap();
    let v = l_value(&s_at(1, p), &chi4, p).unwrap();
    let want = BigFloat::pi(p).ldexp(-2);
    assert!((&v.value.re - &want).abs() <= &v.error_bound + &slack(p));
    let v = l_value(&s_at(2, p), &chi4, p).unwrap();
    assert!((&v.value.re - &catalan(p + 32)).abs() <= &v.error_bound + &slack(p));
    assert!((v.value.re.to_f64() - 0.915_965_594_2).abs() < 1e-10);
    let chi5 = quadratic_character(5).unwrap();
    let v = l_value(&s_at(-1, p), &chi5, p).unwrap();
    let want = BigFloat::from_rational(&Rational::frac(-2, 5), p);
    assert!((&v.value.re - &want).abs() <= &v.error_bound + &slack(p));
    assert_eq!(l_value(&s_at(1, p), &DirichletCharacter::trivial(1), p), Err(Error::Pole));
}

/// `L'(0, chi) = -log q L(0, chi) + sum_a chi(a) log Gamma(a/q)`.
fn lerch_rhs(chi: &DirichletCharacter, p: usize) -> (BigComplex, BigFloat) {
    let q = chi.modulus();
    let l0 = l_exact_nonpos(1, chi).unwrap().embed(1, p).unwrap();
    let logq = BigFloat::from_u64(q, p).ln();
    let mut acc = BigComplex::new(-(&l0.re * &logq), -(&l0.im * &logq));
    let mut err = BigFloat::zero(64);
    for a in 1..=q {
        if chi.value_exponent(a as i64).is_none() {
            continue;
        }
        let lg = log_gamma(&BigFloat::from_rational(&Rational::frac(a as i64, q as i64), p), p).unwrap();
        let c = chi.value_complex(a as i64, p);
        acc = &acc + &(&c * &lg.value);
        err = &err + &lg.error_bound;
    }
    (acc, err)
}

#[test]
fn l_deriv_examples() {
    let p = 192;
    let chi4 = quadratic_character(-4).unwrap();
    let d = l_deriv(&s_at(0, p), &chi4, p).unwrap();
    let q4 = BigFloat::from_rational(&Rational::frac(1, 4), p);
    let q34 = BigFloat::from_rational(&Rational::frac(3, 4), p);
    let want = &(&log_gamma(&q4, p).unwrap().value.re - &log_gamma(&q34, p).unwrap().value.re)
        - &BigFloat::from_i64(4, p).ln().ldexp(-1);
    assert!((&d.value.re - &want).abs() <= &d.error_bound + &slack(p));
    assert!((d.value.re.to_f64() - 0.391_594_392_706_836_8).abs() < 1e-15);
    let chi5 = quadratic_character(5).unwrap();
    let d = l_deriv(&s_at(0, p), &chi5, p).unwrap();
    let (want, e) = lerch_rhs(&chi5, p);
    assert!((&d.value - &want).abs() <= &(&d.error_bound + &e) + &slack(p));
    let d = l_deriv(&s_at(-1, p), &DirichletCharacter::trivial(1), p).unwrap();
    let want = lit("-0.165421143700450929213919660242780642764", p);
    assert!((&d.value.re - &want).abs().log2_abs() < -125.0);
}

#[test]
fn logderiv_examples() {
    let p = 192;
    let chi4 = quadratic_character(-4).unwrap();
    let r = l_logderiv_neg(1, &chi4, p, Routes::Both).unwrap();
    let want = lit("0.783188785413673552943890693798222056180", p);
    assert!((&r.value.value.re - &want).abs().log2_abs() < -125.0);
    // closed form 4 log Gamma(1/4) - log(8 pi^2) for the same quantity
    let q4 = BigFloat::from_rational(&Rational::frac(1, 4), p);
    let pi = BigFloat::pi(p);
    let closed = &log_gamma(&q4, p).unwrap().value.re.mul_i64(4) - &(&pi * &pi).mul_i64(8).ln();
    assert!((&r.value.value.re - &closed).abs() <= &r.value.error_bound + &slack(p));
    let r = l_logderiv_neg(2, &DirichletCharacter::trivial(1), p, Routes::Both).unwrap();
    let want = lit("1.98505372440541115056703592291336771317", p);
    assert!((&r.value.value.re - &want).abs().log2_abs() < -125.0);
    assert!(matches!(l_logderiv_neg(2, &chi4, p, Routes::Both), Err(Error::TrivialZero { s: -1, .. })));
    assert_eq!(l_logderiv_neg(1, &DirichletCharacter::trivial(1), p, Routes::Both), Err(Error::ExcludedCase));
}

#[test]
fn dedekind_examples() {
    let p = 192;
    let q = AbelianFieldSpec::new(1, vec![]).unwrap();
    let v = dedekind_logderiv(&q, 2, p).unwrap();
    assert!((v.value.re.to_f64() - 1.985_053_724_405_411).abs() < 1e-14);
    let k5 = AbelianFieldSpec::quadratic(5).unwrap();
    let v = dedekind_logderiv(&k5, 2, p).unwrap();
    let x = lit("1.98505372440541115056703592291336771317", p);
    let y = lit("-0.481316071051304822921439970165095553380", p);
    assert!((&v.value.re - &(&x + &y)).abs().log2_abs() < -125.0);
    let gauss = AbelianFieldSpec::quadratic(-4).unwrap();
    assert_eq!(dedekind_logderiv(&gauss, 1, p), Err(Error::ExcludedCase));
    assert!(matches!(dedekind_via_ideals(-4, 2, p), Err(Error::TrivialZero { .. })));
    assert!(matches!(dedekind_via_ideals(5, 1, p), Err(Error::Domain(_))));
}

#[test]
fn exact_numeric_consistency() {
    let p = 192;
    for chi in primitive_upto(24) {
        for n in 1..=6u32 {
            if !parity_ok(&chi, n) || (n == 1 && chi.is_trivial()) {
                continue;
            }
            let s = s_at(1 - n as i64, p);
            let num = l_value(&s, &chi, p).unwrap();
            let exact = l_exact_nonpos(n, &chi).unwrap().embed(1, p + 32).unwrap();
            let tol = &num.error_bound + &(&slack(p) * &exact.abs().max(&BigFloat::one(64)));
            assert!((&num.value - &exact).abs() <= tol, "{} n = {n}", chi.label());
        }
    }
}

#[test]
fn two_route_agreement() {
    let p = 192;
    let tol = BigFloat::one(64).ldexp(-(p as i64) / 2);
    for chi in primitive_upto(24) {
        for n in 1..=6u32 {
            if !parity_ok(&chi, n) || (n == 1 && chi.is_trivial()) {
                continue;
            }
            let r = l_logderiv_neg(n, &chi, p, Routes::Both).unwrap();
            let (a, b) = (r.route_a.unwrap(), r.route_b.unwrap());
            assert!(r.agreement.unwrap() < tol, "{} n = {n}", chi.label());
            assert!((&a.value - &b.value).abs() <= &(&a.error_bound + &b.error_bound) + &slack(p));
            assert_eq!(r.value, a);
        }
    }
}

#[test]
fn lerch_identity_at_zero() {
    let p = 160;
    for chi in primitive_upto(50).filter(|c| !c.is_trivial()) {
        let d = l_deriv(&s_at(0, p), &chi, p).unwrap();
        let (want, e) = lerch_rhs(&chi, p);
        let tol = &(&d.error_bound + &e) + &BigFloat::from_u64(chi.modulus(), 64).ldexp(8 - p as i64);
        assert!((&d.value - &want).abs() <= tol, "{}", chi.label());
    }
}

#[test]
fn conjugation_symmetry() {
    let p = 160;
    for chi in primitive_upto(30).filter(|c| !c.is_trivial()) {
        for n in 1..=4u32 {
            if !parity_ok(&chi, n) {
                continue;
            }
            let a = l_logderiv_neg(n, &chi, p, Routes::Direct).unwrap().value;
            let b = l_logderiv_neg(n, &chi.conj(), p, Routes::Direct).unwrap().value;
            let conj = BigComplex::new(b.value.re.clone(), -b.value.im.clone());
            assert!((&a.value - &conj).abs() <= &(&a.error_bound + &b.error_bound) + &slack(p), "{}", chi.label());
            if chi.is_real() {
                assert!(a.value.im.abs() <= &a.error_bound + &slack(p));
            }
        }
    }
}

#[test]
fn factorization_against_ideal_counts() {
    let p = 192;
    for d in [5i64, 8, 12, 13, -3, -4, -7] {
        let k = AbelianFieldSpec::quadratic(d).unwrap();
        for n in [2u32, 3] {
            let chars = k.characters();
            if chars.iter().any(|c| !parity_ok(c, n)) {
                assert!(dedekind_via_ideals(d, n, p).is_err());
                assert!(dedekind_logderiv(&k, n, p).is_err());
                continue;
            }
            let a = dedekind_via_ideals(d, n, p).unwrap();
            let b = dedekind_logderiv(&k, n, p).unwrap();
            let tol = &(&a.error_bound + &b.error_bound) + &slack(p);
            assert!((&a.value - &b.value).abs() <= tol, "D = {d} n = {n}");
            assert!(a.value.re.abs().log2_abs() > -10.0);
        }
    }
}

/// The derivative in `l_pair` matches a centred difference of `l_value`.
#[test]
fn derivative_matches_difference_quotient() {
    let p = 192;
    let h = BigFloat::one(p).ldexp(-40);
    for chi in [quadratic_character(-3).unwrap(), quadratic_character(8).unwrap(), enumerate_characters(7).pop().unwrap()] {
        for s in [Rational::frac(5, 2), Rational::frac(-3, 2), Rational::frac(1, 3)] {
            let s0 = BigFloat::from_rational(&s, p + 32);
            let (_, d) = l_pair(&BigComplex::from_real(s0.clone()), &chi, p).unwrap();
            let up = l_value(&BigComplex::from_real(&s0 + &h), &chi, p).unwrap();
            let dn = l_value(&BigComplex::from_real(&s0 - &h), &chi, p).unwrap();
            let fd = &up.value - &dn.value;
            let fd = BigComplex::new(fd.re.ldexp(39), fd.im.ldexp(39));
            assert!((&fd - &d.value).abs().log2_abs() < -70.0, "{} s = {s}", chi.label());
        }
    }
}

#[test]
fn evaluations_are_well_formed() {
    let chi = quadratic_character(-7).unwrap();
    for p in [64usize, 128, 512] {
        let e: Evaluation = l_value(&s_at(3, p), &chi, p).unwrap();
        assert_eq!(e.prec_bits, p);
        assert!(!e.error_bound.is_negative());
    }
}
