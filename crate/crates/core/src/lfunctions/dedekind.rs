//! Logarithmic derivatives of Dedekind zeta functions of abelian fields at
//! non-positive integers, as a sum over characters and, for quadratic
//! fields, independently from the ideal-count Dirichlet series.

use std::collections::HashMap;

use rayon::prelude::*;

use super::logderiv::{l_logderiv_neg, Routes};
use crate::dirichlet::{kronecker, validate_fundamental_discriminant, AbelianFieldSpec, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::arith::divisors;
use crate::exact::Rational;
use crate::special::evaluation::{bound, BOUND_PREC};
use crate::special::hurwitz::GUARD_BITS;
use crate::special::logs::ln_int;
use crate::special::progression::{progression_sum, ProgressionSum};
use crate::special::{digamma_rational, BigComplex, BigFloat, Evaluation, Route};

/// Largest `|D|` accepted by [`dedekind_via_ideals`].
pub const MAX_IDEAL_DISCRIMINANT: u64 = 200;

/// Head length of the ideal-count series.
const IDEAL_HEAD: u64 = 200;

/// Per-character terms `L'/L(chi, 1 - n)` of `zeta_K'/zeta_K(1 - n)`, in
/// character enumeration order.
pub fn dedekind_logderiv_terms(
    field: &AbelianFieldSpec,
    n: u32,
    prec: usize,
) -> Result<Vec<(DirichletCharacter, Evaluation)>> {
    let chars = field.characters();
    chars
        .par_iter()
        .map(|chi| {
            let r = l_logderiv_neg(n, chi, prec, Routes::Direct)?;
            Ok((r.chi, r.value))
        })
        .collect()
}

/// `zeta_K'/zeta_K(1 - n)` as the sum of `L'/L(chi, 1 - n)` over the
/// characters of `K`.
pub fn dedekind_logderiv(field: &AbelianFieldSpec, n: u32, prec: usize) -> Result<Evaluation> {
    let terms = dedekind_logderiv_terms(field, n, prec)?;
    let mut acc = Evaluation::exact(BigComplex::zero(prec), prec).with_route(Route::EulerMaclaurin);
    for (_, e) in &terms {
        acc = acc.add(e, Route::EulerMaclaurin);
    }
    Ok(acc)
}

struct Series {
    value: BigFloat,
    deriv: BigFloat,
    value_err: BigFloat,
    deriv_err: BigFloat,
}

impl From<&ProgressionSum> for Series {
    fn from(p: &ProgressionSum) -> Self {
        Series {
            value: p.value.clone(),
            deriv: p.deriv.clone(),
            value_err: p.value_err.clone(),
            deriv_err: p.deriv_err.clone(),
        }
    }
}

/// `zeta_K(n)` and `zeta_K'(n)` for the quadratic field of discriminant `d`
/// from `a_m = sum_{e | m} (d/e)`. The terms with `m > M` are regrouped as
/// `sum_{e f > M} (d/e) e^{-n} f^{-n}` and summed exactly through tails of
/// `zeta` and of `sum (d/e) e^{-n}`.
fn ideal_series(d: i64, n: u32, prec: usize) -> Result<Series> {
    let wp = prec + GUARD_BITS;
    let s = n as i64;
    let big_m = IDEAL_HEAD;
    let kappa = |e: u64| kronecker(d, e) as i64;

    let mut value = BigFloat::zero(wp);
    let mut deriv = BigFloat::zero(wp);
    for m in 1..=big_m {
        let a: i64 = divisors(m).into_iter().map(kappa).sum();
        if a == 0 {
            continue;
        }
        let t = BigFloat::from_u64(m, wp).powi(-s).mul_i64(a);
        deriv = &deriv - &(&t * &ln_int(m, wp));
        value = &value + &t;
    }
    let mut value_err = BigFloat::zero(BOUND_PREC);
    let mut deriv_err = BigFloat::zero(BOUND_PREC);

    // e <= M, f > M/e
    let mut zeta_tails: HashMap<u64, ProgressionSum> = HashMap::new();
    for e in 1..=big_m {
        let k = kappa(e);
        if k == 0 {
            continue;
        }
        let start = big_m / e + 1;
        if let std::collections::hash_map::Entry::Vacant(e) = zeta_tails.entry(start) {
            e.insert(progression_sum(s, 1, 0, start, prec)?);
        }
        let z = &zeta_tails[&start];
        let w = BigFloat::from_u64(e, wp).powi(-s).mul_i64(k);
        value = &value + &(&w * &z.value);
        deriv = &deriv + &(&w * &(&z.deriv - &(&z.value * &ln_int(e, wp))));
        let wb = bound(&w);
        value_err = &value_err + &(&wb * &z.value_err);
        let ln_e = ln_int(e, BOUND_PREC);
        deriv_err = &deriv_err + &(&wb * &(&z.deriv_err + &(&ln_e * &z.value_err)));
    }

    // e > M, all f: zeta(n) * sum_{e > M} (d/e) e^{-n}
    let q = d.unsigned_abs();
    let mut tv = BigFloat::zero(wp);
    let mut td = BigFloat::zero(wp);
    let mut tv_err = BigFloat::zero(BOUND_PREC);
    let mut td_err = BigFloat::zero(BOUND_PREC);
    for b in 1..=q {
        let k = kappa(b);
        if k == 0 {
            continue;
        }
        // first k with k q + b > M
        let start = if b > big_m { 0 } else { (big_m - b) / q + 1 };
        let p = progression_sum(s, q, b, start, prec)?;
        tv = &tv + &p.value.mul_i64(k);
        td = &td + &p.deriv.mul_i64(k);
        tv_err = &tv_err + &p.value_err;
        td_err = &td_err + &p.deriv_err;
    }
    let zeta = Series::from(&progression_sum(s, 1, 0, 1, prec)?);
    value = &value + &(&zeta.value * &tv);
    deriv = &deriv + &(&(&zeta.deriv * &tv) + &(&zeta.value * &td));
    let (zv, zd, tvb, tdb) = (bound(&zeta.value), bound(&zeta.deriv), bound(&tv), bound(&td));
    value_err = &value_err + &(&(&zv * &tv_err) + &(&(&tvb * &zeta.value_err) + &(&zeta.value_err * &tv_err)));
    deriv_err = &deriv_err
        + &(&(&(&zd * &tv_err) + &(&tvb * &zeta.deriv_err)) + &(&(&zv * &td_err) + &(&tdb * &zeta.value_err)));
    deriv_err = &deriv_err + &(&(&zeta.deriv_err * &tv_err) + &(&zeta.value_err * &td_err));
    Ok(Series { value, deriv, value_err, deriv_err })
}

/// `zeta_K'/zeta_K(1 - n)` for the quadratic field of fundamental
/// discriminant `d`, from the ideal-count series at `n` and the functional
/// equation `xi(s) = |d|^{s/2} gamma(s) zeta_K(s) = xi(1 - s)` with
/// `gamma = Gamma_R^2` for real and `Gamma_C` for imaginary fields.
pub fn dedekind_via_ideals(d: i64, n: u32, prec: usize) -> Result<Evaluation> {
    validate_fundamental_discriminant(d)?;
    if d.unsigned_abs() > MAX_IDEAL_DISCRIMINANT {
        return Err(Error::Domain(format!("|D| must be at most {MAX_IDEAL_DISCRIMINANT}")));
    }
    if n < 2 {
        return Err(Error::Domain("the ideal-count series needs n >= 2".into()));
    }
    // zeta_K(1 - n) = zeta(1 - n) L(chi_d, 1 - n) vanishes unless d > 0 and n is even
    if d < 0 || n % 2 == 1 {
        return Err(Error::TrivialZero { chi: format!("D:{d}"), s: 1 - n as i64 });
    }
    let wp = prec + GUARD_BITS;
    let z = ideal_series(d, n, prec)?;
    let ratio = &z.deriv / &z.value;
    let ratio_err = &(&z.deriv_err + &(&bound(&ratio) * &z.value_err)) / &bound(&z.value);

    let ln_pi = BigFloat::pi(wp).ln();
    let (g1, g2, shift) = if d > 0 {
        (
            digamma_rational(&Rational::frac(1 - n as i64, 2), wp)?,
            digamma_rational(&Rational::frac(n as i64, 2), wp)?,
            ln_pi.mul_i64(2),
        )
    } else {
        let ln_2pi = &ln_pi + &BigFloat::ln2(wp);
        (
            digamma_rational(&Rational::from_integer(1 - n as i64), wp)?,
            digamma_rational(&Rational::from_integer(n as i64), wp)?,
            ln_2pi.mul_i64(2),
        )
    };
    let ln_d = ln_int(d.unsigned_abs(), wp);
    let v = &(&(&shift - &ln_d) - &(&g1.value.re + &g2.value.re)) - &ratio;
    let err = &ratio_err + &(&g1.error_bound + &g2.error_bound);
    Ok(Evaluation::finish_real(v, err, Route::FunctionalEquation, prec))
}
