//! `L(s, chi)` and `L'(s, chi)` from Hurwitz zeta values,
//! `L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::arith::gcd;
use crate::exact::Rational;
use crate::special::evaluation::BOUND_PREC;
use crate::special::logs::ln_int;
use crate::special::{hurwitz_finite_part_at_one, hurwitz_pair_rational, BigComplex, BigFloat, Evaluation, Route};

/// Extra bits carried by the Hurwitz rows beyond the requested precision.
const ROW_GUARD: usize = 16;

type Row = Arc<Vec<Option<(Evaluation, Evaluation)>>>;
type RowKey = (Rational, Rational, u64, usize);

fn row_cache() -> &'static RwLock<HashMap<RowKey, Row>> {
    static CACHE: OnceLock<RwLock<HashMap<RowKey, Row>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn is_one(s: &BigComplex) -> bool {
    s.im.is_zero() && s.re == BigFloat::one(s.re.prec())
}

/// `(zeta(s, a/q), zeta'(s, a/q))` for every unit `a` in `1..=q`, shared by
/// all characters of modulus `q`. At `s = 1` the finite parts are stored.
fn hurwitz_row(s: &BigComplex, q: u64, prec: usize) -> Result<Row> {
    let key = (s.re.to_rational(), s.im.to_rational(), q, prec);
    if let Some(r) = row_cache().read().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let at_one = is_one(s);
    let entries: Result<Vec<_>> = (1..=q)
        .into_par_iter()
        .map(|a| {
            if gcd(a, q) != 1 {
                return Ok(None);
            }
            let shift = Rational::frac(a as i64, q as i64);
            let pair = if at_one {
                hurwitz_finite_part_at_one(&shift, prec)?
            } else {
                hurwitz_pair_rational(s, &shift, prec)?
            };
            Ok(Some(pair))
        })
        .collect();
    let row = Arc::new(entries?);
    Ok(row_cache().write().unwrap().entry(key).or_insert(row).clone())
}

/// `(L(s, chi), L'(s, chi))` for the primitive character inducing `chi`.
pub fn l_pair(s: &BigComplex, chi: &DirichletCharacter, prec: usize) -> Result<(Evaluation, Evaluation)> {
    let chi = chi.primitive_part();
    if chi.is_trivial() && is_one(s) {
        return Err(Error::Pole);
    }
    let q = chi.modulus();
    let inner = prec + ROW_GUARD;
    let row = hurwitz_row(s, q, inner)?;

    // group Hurwitz values by the exponent of chi(a) before embedding
    let m = chi.order() as usize;
    let mut val = vec![BigComplex::zero(inner); m];
    let mut der = vec![BigComplex::zero(inner); m];
    let mut err_v = BigFloat::zero(BOUND_PREC);
    let mut err_d = BigFloat::zero(BOUND_PREC);
    for a in 1..=q {
        if let (Some(t), Some((v, d))) = (chi.value_exponent(a as i64), &row[a as usize - 1]) {
            val[t as usize] = &val[t as usize] + &v.value;
            der[t as usize] = &der[t as usize] + &d.value;
            err_v = &err_v + &v.error_bound;
            err_d = &err_d + &d.error_bound;
        }
    }
    let mut sv = BigComplex::zero(inner);
    let mut sd = BigComplex::zero(inner);
    for t in 0..m {
        let w = BigComplex::root_of_unity(m as u64, t as i64, inner);
        sv = &sv + &(&w * &val[t]);
        sd = &sd + &(&w * &der[t]);
    }

    let s_in = s.with_prec(inner);
    let ln_q = ln_int(q, inner);
    let q_pow = if s_in.im.is_zero() {
        match s_in.re.to_rational().to_i64() {
            Some(k) => BigComplex::from_real(BigFloat::from_u64(q, inner).powi(-k)),
            None => BigComplex::from_real((-(&s_in.re * &ln_q)).exp()),
        }
    } else {
        (-s_in.scale(&ln_q)).exp()
    };
    let q_mag = q_pow.abs().with_prec(BOUND_PREC);
    let l = &q_pow * &sv;
    let dl = &q_pow * &(&sd - &sv.scale(&ln_q));
    let l_err = &q_mag * &err_v;
    let dl_err = &q_mag * &(&err_d + &(&ln_q.with_prec(BOUND_PREC) * &err_v));
    Ok((
        Evaluation::finish(l, l_err, Route::EulerMaclaurin, prec),
        Evaluation::finish(dl, dl_err, Route::EulerMaclaurin, prec),
    ))
}

pub fn l_value(s: &BigComplex, chi: &DirichletCharacter, prec: usize) -> Result<Evaluation> {
    Ok(l_pair(s, chi, prec)?.0)
}

pub fn l_deriv(s: &BigComplex, chi: &DirichletCharacter, prec: usize) -> Result<Evaluation> {
    Ok(l_pair(s, chi, prec)?.1)
}
