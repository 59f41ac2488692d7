//! `log Gamma` and digamma on the positive reals by the Stirling series after
//! shifting the argument upward with the recurrence.

use num_bigint::BigInt;

use super::bigfloat::BigFloat;
use super::evaluation::{Evaluation, Route, BOUND_PREC};
use super::hurwitz::GUARD_BITS;
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, Rational};

/// Smallest argument at which the Stirling series is used directly.
fn stirling_threshold(prec: usize) -> u64 {
    (0.12 * prec as f64).ceil() as u64 + 10
}

fn max_terms(prec: usize) -> usize {
    64usize.max(prec.div_ceil(4))
}

fn rounding_bound(max_log2: f64, ops: usize, wp: usize) -> BigFloat {
    if !max_log2.is_finite() {
        return BigFloat::zero(BOUND_PREC);
    }
    let mag = (max_log2 - wp as f64 + 3.0).floor() as i64;
    BigFloat::from_u64(ops as u64, BOUND_PREC).ldexp(mag)
}

fn check_positive(x: &BigFloat) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::Domain("argument must be positive".into()));
    }
    Ok(())
}

/// Shift count r with `x + r` past the Stirling threshold.
fn shift_for(x: &BigFloat, prec: usize) -> u64 {
    let y = stirling_threshold(prec);
    match x.floor_i64() {
        Some(f) if f >= y as i64 => 0,
        Some(f) => (y as i64 - f.max(0)) as u64,
        None => 0,
    }
}

/// Sum of `B_{2j} / (2j (2j - 1) y^{2j-1})` (or the digamma variant) with the
/// first omitted term returned separately.
fn stirling_tail(y: &BigFloat, prec: usize, digamma: bool) -> (BigFloat, BigFloat, f64, usize) {
    let wp = y.prec();
    let inv = &BigFloat::one(wp) / y;
    let inv2 = &inv * &inv;
    let mut pow = if digamma { inv2.clone() } else { inv.clone() };
    let mut sum = BigFloat::zero(wp);
    let mut max_log2 = f64::NEG_INFINITY;
    let mut j = 1usize;
    loop {
        let denom = if digamma { 2 * j } else { 2 * j * (2 * j - 1) };
        let c = bernoulli_number(2 * j) * Rational::new(1, BigInt::from(denom)).unwrap();
        let t = &BigFloat::from_rational(&c, wp) * &pow;
        let scale = sum.log2_abs().max(max_log2 - wp as f64).max(-(wp as f64));
        if t.log2_abs() < scale - prec as f64 - 8.0 || j > max_terms(prec) {
            return (sum, t.abs(), max_log2, j);
        }
        max_log2 = max_log2.max(t.log2_abs());
        sum = &sum + &t;
        pow = &pow * &inv2;
        j += 1;
    }
}

/// `log Gamma(x)` for `x > 0`.
pub fn log_gamma(x: &BigFloat, prec: usize) -> Result<Evaluation> {
    check_positive(x)?;
    let wp = prec + GUARD_BITS;
    let x = x.with_prec(wp);
    let r = shift_for(&x, prec);
    let mut product = BigFloat::one(wp);
    for k in 0..r {
        product = &product * &(&x + &BigFloat::from_u64(k, wp));
    }
    let y = &x + &BigFloat::from_u64(r, wp);
    let ln_y = y.ln();
    let half = BigFloat::one(wp).ldexp(-1);
    let ln_2pi = (BigFloat::pi(wp).ldexp(1)).ln();
    let main = &(&(&(&y - &half) * &ln_y) - &y) + &(&ln_2pi * &half);
    let (tail, omitted, tail_log2, terms) = stirling_tail(&y, prec, false);
    let value = &(&main + &tail) - &product.ln();
    let max_log2 = tail_log2.max(main.log2_abs()).max(product.ln().log2_abs());
    let err = &omitted.with_prec(BOUND_PREC).mul_i64(2) + &rounding_bound(max_log2, terms + r as usize + 16, wp);
    Ok(Evaluation::finish_real(value, err, Route::Series, prec))
}

/// Digamma `psi(x)` for `x > 0`.
pub fn digamma(x: &BigFloat, prec: usize) -> Result<Evaluation> {
    check_positive(x)?;
    let wp = prec + GUARD_BITS;
    let x = x.with_prec(wp);
    let r = shift_for(&x, prec);
    let mut recip_sum = BigFloat::zero(wp);
    for k in 0..r {
        recip_sum = &recip_sum + &(&BigFloat::one(wp) / &(&x + &BigFloat::from_u64(k, wp)));
    }
    let y = &x + &BigFloat::from_u64(r, wp);
    digamma_shifted(&y, recip_sum, r as usize, prec)
}

fn digamma_shifted(y: &BigFloat, correction: BigFloat, shifts: usize, prec: usize) -> Result<Evaluation> {
    let wp = y.prec();
    let main = &y.ln() - &(&BigFloat::one(wp) / &y.ldexp(1));
    let (tail, omitted, tail_log2, terms) = stirling_tail(y, prec, true);
    let value = &(&main - &tail) - &correction;
    let max_log2 = tail_log2.max(main.log2_abs()).max(correction.log2_abs());
    let err = &omitted.with_prec(BOUND_PREC).mul_i64(2) + &rounding_bound(max_log2, terms + shifts + 16, wp);
    Ok(Evaluation::finish_real(value, err, Route::Series, prec))
}

/// Digamma at a rational point that is not a non-positive integer; negative
/// arguments are reached through the recurrence with an exact correction.
pub fn digamma_rational(a: &Rational, prec: usize) -> Result<Evaluation> {
    if a.is_integer() && !(*a > 0) {
        return Err(Error::Pole);
    }
    let wp = prec + GUARD_BITS;
    let floor = a.floor();
    let threshold = BigInt::from(stirling_threshold(prec));
    let r: u64 = if floor >= threshold {
        0
    } else {
        num_traits::ToPrimitive::to_u64(&(threshold - floor)).ok_or_else(|| Error::Domain("argument too negative".into()))?
    };
    let correction: Rational = (0..r).map(|k| (a + &Rational::from_integer(k)).recip().unwrap()).sum();
    let y = BigFloat::from_rational(&(a + &Rational::from_integer(r)), wp);
    digamma_shifted(&y, BigFloat::from_rational(&correction, wp), r as usize, prec)
}

/// Euler's constant, as `-psi(1)`.
pub fn euler_gamma(prec: usize) -> Result<Evaluation> {
    Ok(digamma(&BigFloat::one(prec), prec)?.neg())
}
