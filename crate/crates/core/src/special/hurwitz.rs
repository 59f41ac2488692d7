//! Hurwitz zeta `zeta(s, a) = sum_{k>=0} (k + a)^{-s}` and its s-derivative
//! by Euler–Maclaurin summation.
//!
//! With `x = N + a` the expansion used is
//!
//! ```text
//! sum_{k<N} (k+a)^{-s} + x^{1-s}/(s-1) + x^{-s}/2
//!     + sum_{j=1}^{M} B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
//! ```
//!
//! and the derivative is taken term by term. The reported bound is twice the
//! first omitted correction plus an estimate of accumulated rounding.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::bigfloat::BigFloat;
use super::complex::BigComplex;
use super::evaluation::{Evaluation, Route, BOUND_PREC};
use super::logs::ln_int;
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, Rational};

pub const GUARD_BITS: usize = 32;

/// The shift `a` of a Hurwitz zeta evaluation.
#[derive(Clone, Copy, Debug)]
pub enum Shift<'a> {
    Float(&'a BigFloat),
    /// Rational shifts take logarithms from the integer log cache.
    Rational(&'a Rational),
}

/// Summation parameters for a given `s` and target precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmParams {
    pub direct_terms: usize,
    pub max_corrections: usize,
    pub work_prec: usize,
}

pub fn em_params(s: &BigComplex, prec: usize) -> EmParams {
    let s_mag = s.abs().to_f64();
    let digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize;
    let by_s = (3.0 * s_mag).ceil() as usize;
    EmParams {
        direct_terms: digits.max(by_s).max(10),
        max_corrections: 64usize.max(prec.div_ceil(8)),
        work_prec: prec + GUARD_BITS,
    }
}

/// Exponent `s` classified for the cheapest way to form `x^{-s}`.
enum Exponent {
    Int(i64),
    Real(BigFloat),
    Complex(BigComplex),
}

impl Exponent {
    fn classify(s: &BigComplex) -> Self {
        if !s.im.is_zero() {
            return Exponent::Complex(s.clone());
        }
        let r = s.re.to_rational();
        match r.to_i64() {
            Some(n) if n.abs() < 1 << 20 => Exponent::Int(n),
            _ => Exponent::Real(s.re.clone()),
        }
    }

    fn needs_log(&self) -> bool {
        !matches!(self, Exponent::Int(_))
    }

    /// `x^{-s}`.
    fn neg_pow(&self, x: &BigFloat, ln_x: Option<&BigFloat>) -> BigComplex {
        match self {
            Exponent::Int(n) => BigComplex::from_real(x.powi(-n)),
            Exponent::Real(s) => BigComplex::from_real((-(s * ln_x.unwrap())).exp()),
            Exponent::Complex(s) => {
                let ln = ln_x.unwrap();
                let modulus = (-(&s.re * ln)).exp();
                BigComplex::cis(&-(&s.im * ln)).scale(&modulus)
            }
        }
    }
}

struct Point {
    x: BigFloat,
    ln: Option<BigFloat>,
}

fn point(shift: Shift<'_>, k: u64, wp: usize, need_ln: bool) -> Point {
    match shift {
        Shift::Float(a) => {
            let x = &BigFloat::from_u64(k, wp) + &a.with_prec(wp);
            let ln = need_ln.then(|| x.ln());
            Point { x, ln }
        }
        Shift::Rational(a) => {
            let numer = a.numer() + BigInt::from(k) * a.denom();
            let x = BigFloat::from_rational(&Rational::new(numer.clone(), a.denom().clone()).unwrap(), wp);
            let ln = need_ln.then(|| match (numer.to_u64(), a.denom().to_u64()) {
                (Some(n), Some(d)) => &ln_int(n, wp) - &ln_int(d, wp),
                _ => x.ln(),
            });
            Point { x, ln }
        }
    }
}

fn is_one(s: &BigComplex) -> bool {
    s.im.is_zero() && s.re == BigFloat::one(s.re.prec())
}

fn validate(s: &BigComplex, shift: Shift<'_>, finite_part: bool) -> Result<()> {
    if !finite_part && is_one(s) {
        return Err(Error::Pole);
    }
    let ok = match shift {
        Shift::Float(a) => a.is_positive() && *a <= BigFloat::one(a.prec()),
        Shift::Rational(a) => !a.is_negative() && !a.is_zero() && *a <= 1,
    };
    if !ok {
        return Err(Error::Domain("Hurwitz shift must lie in (0, 1]".into()));
    }
    Ok(())
}

/// Running state of one Euler–Maclaurin series (value or derivative).
struct Series {
    sum: BigComplex,
    max_log2: f64,
    omitted: Option<BigFloat>,
}

impl Series {
    fn new(wp: usize) -> Self {
        Series { sum: BigComplex::zero(wp), max_log2: f64::NEG_INFINITY, omitted: None }
    }

    fn push(&mut self, t: &BigComplex) {
        self.max_log2 = self.max_log2.max(t.abs().log2_abs());
        self.sum = &self.sum + t;
    }

    fn negligible(&self, t: &BigComplex, prec: usize, wp: usize) -> bool {
        if t.is_zero() {
            return true;
        }
        let scale = self.sum.abs().log2_abs().max(self.max_log2 - wp as f64);
        t.abs().log2_abs() < scale - prec as f64 - 8.0
    }

    fn done(&self) -> bool {
        self.omitted.is_some()
    }

    fn finish(self, ops: usize, prec: usize, wp: usize) -> Evaluation {
        let truncation = self.omitted.unwrap_or_else(|| BigFloat::zero(BOUND_PREC));
        let truncation = truncation.with_prec(BOUND_PREC).mul_i64(2);
        let rounding = if self.max_log2.is_finite() {
            let mag = (self.max_log2 - wp as f64 + 3.0).floor() as i64;
            BigFloat::from_u64(ops as u64, BOUND_PREC).ldexp(mag)
        } else {
            BigFloat::zero(BOUND_PREC)
        };
        Evaluation::finish(self.sum, &truncation + &rounding, Route::EulerMaclaurin, prec)
    }
}

/// Evaluates `zeta(s, a)` and/or `d/ds zeta(s, a)` in one pass.
pub fn euler_maclaurin(
    s: &BigComplex,
    shift: Shift<'_>,
    prec: usize,
    want_value: bool,
    want_deriv: bool,
) -> Result<(Option<Evaluation>, Option<Evaluation>)> {
    em_core(s, shift, prec, want_value, want_deriv, false)
}

fn em_core(
    s: &BigComplex,
    shift: Shift<'_>,
    prec: usize,
    want_value: bool,
    want_deriv: bool,
    finite_part: bool,
) -> Result<(Option<Evaluation>, Option<Evaluation>)> {
    validate(s, shift, finite_part)?;
    let finite_part = finite_part && is_one(s);
    let params = em_params(s, prec);
    let wp = params.work_prec;
    let s = s.with_prec(wp);
    let expo = Exponent::classify(&s);
    let need_ln = want_deriv || expo.needs_log();

    let mut val = Series::new(wp);
    let mut der = Series::new(wp);

    for k in 0..params.direct_terms as u64 {
        let p = point(shift, k, wp, need_ln);
        let xs = expo.neg_pow(&p.x, p.ln.as_ref());
        if want_deriv {
            der.push(&-xs.scale(p.ln.as_ref().unwrap()));
        }
        if want_value {
            val.push(&xs);
        }
    }

    // tail at x = N + a
    let p = point(shift, params.direct_terms as u64, wp, true);
    let x = &p.x;
    let ln_x = p.ln.as_ref().unwrap();
    let xs = expo.neg_pow(x, Some(ln_x));
    if finite_part {
        // x^{1-s}/(s-1) = 1/(s-1) - ln x + (s-1) ln^2 x / 2 + ...
        if want_value {
            val.push(&BigComplex::from_real(-ln_x));
        }
        if want_deriv {
            der.push(&BigComplex::from_real((ln_x * ln_x).ldexp(-1)));
        }
    } else {
        let one = BigComplex::one(wp);
        let inv_sm1 = &one / &(&s - &one);
        let x_xs_inv = &xs.scale(x) * &inv_sm1;
        if want_value {
            val.push(&x_xs_inv);
        }
        if want_deriv {
            der.push(&-x_xs_inv.scale(ln_x));
            der.push(&-(&x_xs_inv * &inv_sm1));
        }
    }
    if want_value {
        val.push(&xs.scale(&BigFloat::one(wp).ldexp(-1)));
    }
    if want_deriv {
        der.push(&-xs.scale(&ln_x.ldexp(-1)));
    }
    if !want_value {
        val.omitted = Some(BigFloat::zero(BOUND_PREC));
    }
    if !want_deriv {
        der.omitted = Some(BigFloat::zero(BOUND_PREC));
    }

    // corrections
    let x_inv = &BigFloat::one(wp) / x;
    let x_inv2 = &x_inv * &x_inv;
    let mut base = xs.scale(&x_inv);
    let mut poch = s.clone();
    let mut poch_d = BigComplex::one(wp);
    let mut factorial = BigInt::from(2);
    let mut j = 1usize;
    while !(val.done() && der.done()) {
        let coef = bernoulli_number(2 * j) * Rational::new(1, factorial.clone()).unwrap();
        let c = BigFloat::from_rational(&coef, wp);
        let last = j > params.max_corrections;
        if !val.done() {
            let t = (&poch * &base).scale(&c);
            if last || val.negligible(&t, prec, wp) {
                val.omitted = Some(t.abs());
            } else {
                val.push(&t);
            }
        }
        if !der.done() {
            let inner = &poch_d - &poch.scale(ln_x);
            let t = (&inner * &base).scale(&c);
            if last || der.negligible(&t, prec, wp) {
                der.omitted = Some(t.abs());
            } else {
                der.push(&t);
            }
        }
        for i in [2 * j - 1, 2 * j] {
            let si = &s + &BigComplex::from_i64(i as i64, wp);
            poch_d = &(&poch_d * &si) + &poch;
            poch = &poch * &si;
        }
        base = base.scale(&x_inv2);
        factorial *= BigInt::from((2 * j + 1) * (2 * j + 2));
        j += 1;
    }

    let ops = params.direct_terms + 2 * j + 16;
    let value = want_value.then(|| val.finish(ops, prec, wp));
    let deriv = want_deriv.then(|| der.finish(ops, prec, wp));
    Ok((value, deriv))
}

pub fn hurwitz_zeta(s: &BigComplex, a: &BigFloat, prec: usize) -> Result<Evaluation> {
    Ok(euler_maclaurin(s, Shift::Float(a), prec, true, false)?.0.unwrap())
}

pub fn hurwitz_zeta_ds(s: &BigComplex, a: &BigFloat, prec: usize) -> Result<Evaluation> {
    Ok(euler_maclaurin(s, Shift::Float(a), prec, false, true)?.1.unwrap())
}

pub fn hurwitz_zeta_rational(s: &BigComplex, a: &Rational, prec: usize) -> Result<Evaluation> {
    Ok(euler_maclaurin(s, Shift::Rational(a), prec, true, false)?.0.unwrap())
}

pub fn hurwitz_zeta_ds_rational(s: &BigComplex, a: &Rational, prec: usize) -> Result<Evaluation> {
    Ok(euler_maclaurin(s, Shift::Rational(a), prec, false, true)?.1.unwrap())
}

/// `(zeta(s, a), d/ds zeta(s, a))` sharing the direct-sum logarithms.
pub fn hurwitz_pair_rational(
    s: &BigComplex,
    a: &Rational,
    prec: usize,
) -> Result<(Evaluation, Evaluation)> {
    let (v, d) = euler_maclaurin(s, Shift::Rational(a), prec, true, true)?;
    Ok((v.unwrap(), d.unwrap()))
}

/// Finite parts at `s = 1`: the constant and linear Laurent coefficients of
/// `zeta(s, a) - 1/(s - 1)`. The constant term equals `-psi(a)`.
pub fn hurwitz_finite_part_at_one(a: &Rational, prec: usize) -> Result<(Evaluation, Evaluation)> {
    let s = BigComplex::one(prec);
    let (v, d) = em_core(&s, Shift::Rational(a), prec, true, true, true)?;
    Ok((v.unwrap(), d.unwrap()))
}
