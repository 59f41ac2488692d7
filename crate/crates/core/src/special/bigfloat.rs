//! Arbitrary-precision binary floating point with an explicit precision.
//!
//! A thin value type over `astro-float-num`. Every value carries its own
//! precision in bits; binary operations round to the larger operand
//! precision, always to nearest-even.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float_num::{BigFloat as Raw, Consts, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

/// Constants are precomputed to this many bits in every thread so that later
/// requests are served by rounding one cached value, independent of the order
/// in which a thread happened to ask for them.
const WARM_BITS: usize = 9216;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(warm_consts());
}

fn warm_consts() -> Consts {
    let mut cc = Consts::new().expect("constants cache");
    cc.pi(WARM_BITS, RM);
    cc.ln_2(WARM_BITS, RM);
    cc.e(WARM_BITS, RM);
    cc
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Clone)]
pub struct BigFloat {
    raw: Raw,
    prec: usize,
}

impl BigFloat {
    fn wrap(raw: Raw, prec: usize) -> Self {
        debug_assert!(!raw.is_nan(), "NaN produced at {prec} bits");
        BigFloat { raw, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::wrap(Raw::from_u64(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        Self::wrap(Raw::from_i64(n, prec.max(64)).round_to(prec), prec)
    }

    pub fn from_u64(n: u64, prec: usize) -> Self {
        Self::wrap(Raw::from_u64(n, prec.max(64)).round_to(prec), prec)
    }

    /// Correctly rounded conversion of a binary64 value.
    pub fn from_f64(x: f64, prec: usize) -> Self {
        Self::wrap(Raw::from_f64(x, prec.max(64)).round_to(prec), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        if n.is_zero() {
            return Self::zero(prec);
        }
        let words: Vec<Word> = n.magnitude().iter_u64_digits().map(|w| w as Word).collect();
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let exp = (words.len() * WORD_BIT_SIZE) as i32;
        let raw = Raw::from_words(&words, sign, exp);
        Self::wrap(raw.round_to(prec), prec)
    }

    pub fn from_rational(r: &Rational, prec: usize) -> Self {
        let work = prec + 64;
        let n = Self::from_bigint(r.numer(), work);
        let d = Self::from_bigint(r.denom(), work);
        (&n / &d).with_prec(prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Rounds (or widens) to `prec` bits.
    pub fn with_prec(&self, prec: usize) -> Self {
        Self::wrap(self.raw.round_to(prec), prec)
    }

    pub fn pi(prec: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec, RM)).round_to(prec), prec)
    }

    pub fn ln2(prec: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.ln_2(prec, RM)).round_to(prec), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.raw.is_negative() && !self.raw.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.raw.is_positive() && !self.raw.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.raw.is_nan() && !self.raw.is_inf()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.raw.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.raw.sqrt(self.prec, RM).round_to(self.prec), self.prec)
    }

    /// Natural logarithm; NaN for non-positive input is a caller bug.
    pub fn ln(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.raw.ln(p, RM, cc)).round_to(p), p)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.raw.exp(p, RM, cc)).round_to(p), p)
    }

    pub fn sin(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.raw.sin(p, RM, cc)).round_to(p), p)
    }

    pub fn cos(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.raw.cos(p, RM, cc)).round_to(p), p)
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec;
        let mut base = self.clone();
        let mut acc = Self::one(p);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            acc = &Self::one(p) / &acc;
        }
        acc
    }

    /// `self * 2^k`, exact.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (m, e) = self.to_scaled_integer();
        let shifted = e + k;
        let words: Vec<Word> = m.magnitude().iter_u64_digits().map(|w| w as Word).collect();
        let sign = if m.is_negative() { Sign::Neg } else { Sign::Pos };
        let exp = (words.len() * WORD_BIT_SIZE) as i64 + shifted;
        let raw = Raw::from_words(&words, sign, exp as i32);
        Self::wrap(raw.round_to(self.prec), self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Self::from_i64(k, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self / &Self::from_i64(k, self.prec)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self * &Self::from_rational(r, self.prec)
    }

    /// Exact decomposition `self = m * 2^e` with integer `m`.
    pub fn to_scaled_integer(&self) -> (BigInt, i64) {
        match self.raw.as_raw_parts() {
            Some((words, _, sign, exp, _)) if !self.raw.is_zero() => {
                let mag = BigUint::from_slice(
                    &words
                        .iter()
                        .flat_map(|&w| [w as u32, (w >> 32) as u32])
                        .collect::<Vec<u32>>(),
                );
                let m = if sign == Sign::Neg { -BigInt::from(mag) } else { BigInt::from(mag) };
                (m, exp as i64 - (words.len() * WORD_BIT_SIZE) as i64)
            }
            _ => (BigInt::zero(), 0),
        }
    }

    /// Exact rational value of this binary float.
    pub fn to_rational(&self) -> Rational {
        let (m, e) = self.to_scaled_integer();
        if e >= 0 {
            Rational::from_integer(m << e as usize)
        } else {
            Rational::new(m, BigInt::one() << (-e) as usize).expect("nonzero power of two")
        }
    }

    /// Approximate `log2 |self|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        match self.raw.as_raw_parts() {
            Some((words, _, _, exp, _)) if !self.raw.is_zero() => {
                let top = *words.last().unwrap() as f64;
                top.log2() + exp as f64 - WORD_BIT_SIZE as f64
            }
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (_, _, sign, exp, _) = self.raw.as_raw_parts().unwrap();
        let words = self.raw.as_raw_parts().unwrap().0;
        let top = *words.last().unwrap();
        let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
        let mant = top as f64 + next as f64 / 18446744073709551616.0;
        let mag = mant * 2f64.powi((exp as i64 - WORD_BIT_SIZE as i64).clamp(-2000, 2000) as i32);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Decimal rendering with `digits` significant digits, rounded half-up on
    /// the exact binary value. Positional notation for moderate exponents,
    /// `e` notation otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let (m, e) = self.to_scaled_integer();
        let negative = m.is_negative();
        let m = m.abs();
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let lower = num_traits::pow(BigInt::from(10), digits - 1);
        let upper = &lower * 10;
        let mut scaled;
        let mut guard = 0;
        loop {
            scaled = round_scaled(&m, e, digits as i64 - 1 - e10);
            if scaled >= upper {
                e10 += 1;
            } else if scaled < lower {
                e10 -= 1;
            } else {
                break;
            }
            guard += 1;
            if guard > 8 {
                break;
            }
        }
        let text = scaled.to_string();
        let sign = if negative { "-" } else { "" };
        if (-8..=24).contains(&e10) {
            let point = e10 + 1;
            if point <= 0 {
                format!("{sign}0.{}{}", "0".repeat((-point) as usize), text)
            } else if point as usize >= text.len() {
                format!("{sign}{}{}", text, "0".repeat(point as usize - text.len()))
            } else {
                let (a, b) = text.split_at(point as usize);
                format!("{sign}{a}.{b}")
            }
        } else {
            let (a, b) = text.split_at(1);
            if b.is_empty() {
                format!("{sign}{a}e{e10}")
            } else {
                format!("{sign}{a}.{b}e{e10}")
            }
        }
    }

    /// Number of decimal digits that represent `prec` bits.
    #[allow(clippy::approx_constant)]
    pub fn decimal_digits_for(prec: usize) -> usize {
        ((prec as f64) * 0.3010).ceil() as usize
    }

    pub fn parse_decimal(text: &str, prec: usize) -> Result<Self> {
        let r = Rational::parse(text)?;
        Ok(Self::from_rational(&r, prec))
    }

    /// Largest integer not above `self`, if it fits in an `i64`.
    pub fn floor_i64(&self) -> Option<i64> {
        self.to_rational().floor().to_i64()
    }
}

/// `round(m * 2^e * 10^k)` to the nearest integer, ties away from zero.
fn round_scaled(m: &BigInt, e: i64, k: i64) -> BigInt {
    let ten = BigInt::from(10);
    let mut numer = m.clone();
    let mut denom = BigInt::one();
    if k >= 0 {
        numer *= num_traits::pow(ten, k as usize);
    } else {
        denom *= num_traits::pow(ten, (-k) as usize);
    }
    if e >= 0 {
        numer <<= e as usize;
    } else {
        denom <<= (-e) as usize;
    }
    let (q, r) = numer.div_rem(&denom);
    if r * 2 >= denom {
        q + 1
    } else {
        q
    }
}

trait RoundTo {
    fn round_to(&self, prec: usize) -> Raw;
}

impl RoundTo for Raw {
    fn round_to(&self, prec: usize) -> Raw {
        let mut r = self.clone();
        if !r.is_zero() {
            let _ = r.set_precision(prec.max(1), RM);
        }
        r
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}b]", self.to_decimal(BigFloat::decimal_digits_for(self.prec)), self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(BigFloat::decimal_digits_for(self.prec)))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.raw.cmp(&other.raw) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.raw.cmp(&other.raw).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($imp:ident, $method:ident) => {
        impl $imp<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                let p = self.prec.max(rhs.prec);
                BigFloat::wrap(self.raw.$method(&rhs.raw, p, RM).round_to(p), p)
            }
        }
        impl $imp<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
        impl $imp<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(self.raw.neg(), self.prec)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(self.raw.clone().neg(), self.prec)
    }
}

/// Checked division for call sites where a zero divisor is an input error.
pub fn checked_div(a: &BigFloat, b: &BigFloat) -> Result<BigFloat> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip_is_exact_for_dyadics() {
        let r = Rational::frac(-13, 64);
        let x = BigFloat::from_rational(&r, 128);
        assert_eq!(x.to_rational(), r);
        assert_eq!(x.to_decimal(6), "-0.203125");
    }

    #[test]
    fn decimal_rendering() {
        let third = BigFloat::from_rational(&Rational::frac(1, 3), 128);
        assert_eq!(third.to_decimal(10), "0.3333333333");
        let big = BigFloat::from_i64(123456789, 64);
        assert_eq!(big.to_decimal(3), "123000000");
        let tiny = BigFloat::from_i64(1, 64).ldexp(-200);
        assert_eq!(tiny.to_decimal(6), "6.22302e-61");
        assert_eq!(BigFloat::from_i64(-2, 64).to_decimal(4), "-2.000");
    }

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(256);
        assert_eq!(
            pi.to_decimal(50),
            "3.1415926535897932384626433832795028841971693993751"
        );
    }

    #[test]
    fn elementary_functions() {
        let two = BigFloat::from_i64(2, 192);
        let s = two.sqrt();
        assert!((&(&s * &s) - &two).abs().log2_abs() < -188.0);
        let l = two.ln();
        assert_eq!(l, BigFloat::ln2(192));
        let e = BigFloat::one(192).exp();
        assert_eq!(&e.ln().to_decimal(40), "1.000000000000000000000000000000000000000");
        let x = BigFloat::from_rational(&Rational::frac(3, 7), 192);
        let (s, c) = (x.sin(), x.cos());
        let one = &(&s * &s) + &(&c * &c);
        assert!((&one - &BigFloat::one(192)).abs().log2_abs() < -186.0);
    }

    #[test]
    fn powi_and_ldexp() {
        let x = BigFloat::from_i64(3, 128);
        assert_eq!(x.powi(5), BigFloat::from_i64(243, 128));
        assert_eq!(x.powi(-2).to_rational().to_f64(), 1.0 / 9.0);
        assert_eq!(x.ldexp(4), BigFloat::from_i64(48, 128));
        assert_eq!(x.ldexp(-1).to_rational(), Rational::frac(3, 2));
    }

    #[test]
    fn to_f64_matches() {
        for v in [1.0, -2.5, 1e-30, 6.02e23, std::f64::consts::PI] {
            assert_eq!(BigFloat::from_f64(v, 128).to_f64(), v);
        }
    }

    #[test]
    fn parse_decimal_roundtrip() {
        let x = BigFloat::pi(192);
        let text = x.to_decimal(BigFloat::decimal_digits_for(192));
        let back = BigFloat::parse_decimal(&text, 192).unwrap();
        assert!((&x - &back).abs().log2_abs() < -185.0);
    }
}
