//! Tails of Dirichlet series along an arithmetic progression,
//! `sum_{k >= start} (kq + b)^{-s}` for integer `s >= 2`, with the
//! s-derivative, by direct summation followed by Euler–Maclaurin in `k`.

use num_bigint::BigInt;

use super::bigfloat::BigFloat;
use super::evaluation::BOUND_PREC;
use super::hurwitz::GUARD_BITS;
use super::logs::ln_int;
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, Rational};

#[derive(Debug, Clone)]
pub struct ProgressionSum {
    /// Values at working precision `prec + GUARD_BITS`.
    pub value: BigFloat,
    pub deriv: BigFloat,
    pub value_err: BigFloat,
    pub deriv_err: BigFloat,
}

pub fn progression_sum(s: i64, q: u64, b: u64, start: u64, prec: usize) -> Result<ProgressionSum> {
    if s < 2 {
        return Err(Error::Domain(format!("progression sums need s >= 2, got {s}")));
    }
    if q == 0 || start * q + b == 0 {
        return Err(Error::Domain("progression must stay positive".into()));
    }
    let wp = prec + GUARD_BITS;
    let digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as u64;
    let k0 = start.max(digits).max(3 * s as u64).max(10);
    let cap = 64usize.max(prec.div_ceil(8));

    let mut value = BigFloat::zero(wp);
    let mut deriv = BigFloat::zero(wp);
    let mut max_log2 = f64::NEG_INFINITY;
    for k in start..k0 {
        let u = k * q + b;
        let t = BigFloat::from_u64(u, wp).powi(-s);
        let d = -(&t * &ln_int(u, wp));
        max_log2 = max_log2.max(t.log2_abs()).max(d.log2_abs());
        value = &value + &t;
        deriv = &deriv + &d;
    }

    let u_int = k0 * q + b;
    let u = BigFloat::from_u64(u_int, wp);
    let ln_u = ln_int(u_int, wp);
    let x = u.powi(-s);
    let sm1 = BigFloat::from_i64(s - 1, wp);
    let head = &(&u * &x) / &sm1.mul_i64(q as i64);
    let half_x = x.ldexp(-1);
    let tail_v = &head + &half_x;
    let tail_d = &(&-(&ln_u * &head) - &(&head / &sm1)) - &(&ln_u * &half_x);
    max_log2 = max_log2.max(tail_v.log2_abs()).max(tail_d.log2_abs());
    value = &value + &tail_v;
    deriv = &deriv + &tail_d;

    let qf = BigFloat::from_u64(q, wp);
    let step = &(&qf / &u) * &(&qf / &u);
    let mut base = &(&x * &qf) / &u;
    let s_f = BigFloat::from_i64(s, wp);
    let mut poch = s_f.clone();
    let mut poch_d = BigFloat::one(wp);
    let mut factorial = BigInt::from(2);
    let mut omitted_v = None;
    let mut omitted_d = None;
    let mut j = 1usize;
    let negligible = |t: &BigFloat, sum: &BigFloat, max_log2: f64| {
        t.is_zero() || t.log2_abs() < sum.log2_abs().max(max_log2 - wp as f64) - prec as f64 - 8.0
    };
    while omitted_v.is_none() || omitted_d.is_none() {
        let c = BigFloat::from_rational(&(bernoulli_number(2 * j) * Rational::new(1, factorial.clone())?), wp);
        let last = j > cap;
        let scaled = &c * &base;
        if omitted_v.is_none() {
            let t = &scaled * &poch;
            if last || negligible(&t, &value, max_log2) {
                omitted_v = Some(t.abs());
            } else {
                max_log2 = max_log2.max(t.log2_abs());
                value = &value + &t;
            }
        }
        if omitted_d.is_none() {
            let t = &scaled * &(&poch_d - &(&poch * &ln_u));
            if last || negligible(&t, &deriv, max_log2) {
                omitted_d = Some(t.abs());
            } else {
                max_log2 = max_log2.max(t.log2_abs());
                deriv = &deriv + &t;
            }
        }
        for i in [2 * j - 1, 2 * j] {
            let si = &s_f + &BigFloat::from_u64(i as u64, wp);
            poch_d = &(&poch_d * &si) + &poch;
            poch = &poch * &si;
        }
        base = &base * &step;
        factorial *= BigInt::from((2 * j + 1) * (2 * j + 2));
        j += 1;
    }

    let ops = (k0 - start) as usize + 2 * j + 16;
    let rounding = BigFloat::from_u64(ops as u64, BOUND_PREC).ldexp((max_log2 - wp as f64 + 3.0).floor() as i64);
    let err = |o: Option<BigFloat>| &o.unwrap().with_prec(BOUND_PREC).mul_i64(2) + &rounding;
    Ok(ProgressionSum { value, deriv, value_err: err(omitted_v), deriv_err: err(omitted_d) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{hurwitz_pair_rational, BigComplex};

    #[test]
    fn matches_hurwitz() {
        let p = 192;
        for (s, q, b) in [(2i64, 1u64, 1u64), (3, 4, 1), (4, 5, 3), (6, 24, 23)] {
            let got = progression_sum(s, q, b, 0, p).unwrap();
            let (v, d) = hurwitz_pair_rational(&BigComplex::from_i64(s, p), &Rational::frac(b as i64, q as i64), p).unwrap();
            let wp = p + GUARD_BITS;
            let qs = BigFloat::from_u64(q, wp).powi(-s);
            let ln_q = ln_int(q, wp);
            let expect_v = &v.value.re * &qs;
            let expect_d = &(&d.value.re * &qs) - &(&expect_v * &ln_q);
            assert!((&got.value - &expect_v).abs().log2_abs() < -180.0, "s={s} q={q} b={b}");
            assert!((&got.deriv - &expect_d).abs().log2_abs() < -180.0, "s={s} q={q} b={b}");
            assert!(got.value_err.log2_abs() < -190.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(progression_sum(1, 1, 1, 0, 64).is_err());
        assert!(progression_sum(2, 3, 0, 0, 64).is_err());
        assert!(progression_sum(2, 3, 0, 1, 64).is_ok());
    }
}
